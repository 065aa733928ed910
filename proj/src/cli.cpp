#include "tbf/cli.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tbf/boolfn.hpp"
#include "tbf/constructions.hpp"
#include "tbf/io.hpp"
#include "tbf/measures.hpp"

namespace tbf {

namespace {

struct Common {
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
};

void deliver(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(c.out);
  if (!os) throw std::runtime_error("cannot write " + c.out);
  os << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Scheme selector: a construction id or a codec name.
EncodingScheme scheme_from_flag(const std::string& s, int n) {
  std::string t = s;
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "dec96") return EncodingScheme::make(SchemeId::Dec96, n);
  if (t == "dec112") return EncodingScheme::make(SchemeId::Dec112, n);
  if (t == "dec240") return EncodingScheme::make(SchemeId::Dec240, n);
  return Construction::make(construction_from_string(s), n).scheme;
}

int default_n(const std::string& s) {
  std::string t = s;
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return (t == "f3b" || t == "f3" || t == "f3c" || t == "dec240") ? 8 : 16;
}

struct MeasureCol {
  std::string name;
  std::string value;
};

std::vector<MeasureCol> measure_values(const MeasureReport& rep, const std::vector<std::string>& want) {
  std::vector<MeasureCol> cols;
  auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; };
  for (const std::string& m : want) {
    std::string low = m;
    for (char& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "d")
      cols.push_back({"D", opt_int(rep.D)});
    else if (low == "s")
      cols.push_back({"s", opt_int(rep.s)});
    else if (low == "bs")
      cols.push_back({"bs", opt_int(rep.bs)});
    else if (low == "c")
      cols.push_back({"C", opt_int(rep.C)});
    else if (low == "deg")
      cols.push_back({"deg", opt_int(rep.deg)});
    else if (low == "adeg")
      cols.push_back({"adeg", opt_int(rep.adeg)});
    else if (low == "lambda")
      cols.push_back({"lambda", rep.lambda ? fmt_double(*rep.lambda) : "-"});
    else
      throw std::runtime_error("unknown measure: " + m);
  }
  return cols;
}

std::string render_row(const Common& c, const std::vector<MeasureCol>& cols) {
  std::ostringstream os;
  if (c.format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].name;
    os << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].value;
    os << "\n";
  } else {
    for (std::size_t i = 0; i < cols.size(); ++i)
      os << (i ? " " : "") << cols[i].name << "=" << cols[i].value;
    os << "\n";
  }
  return os.str();
}

std::string coord_text(const std::optional<std::array<int, 3>>& p, bool three) {
  if (!p) return "-";
  std::ostringstream os;
  if (three)
    os << "(" << (*p)[0] << "," << (*p)[1] << "," << (*p)[2] << ")";
  else if ((*p)[0] == 0)
    os << (*p)[1];  // bare column pointer
  else
    os << "(" << (*p)[0] << "," << (*p)[1] << ")";
  return os.str();
}

BitString load_bits(const std::string& input_path, const std::string& bits, long long want) {
  BitString x;
  if (!bits.empty()) {
    x = BitString::from_string(bits);
  } else if (!input_path.empty()) {
    x = read_instance(input_path);
  } else {
    throw std::runtime_error("provide --input or --bits");
  }
  if (want >= 0 && static_cast<long long>(x.size()) != want)
    throw std::runtime_error("input has " + std::to_string(x.size()) + " bits, expected " +
                             std::to_string(want));
  return x;
}

int cmd_measure(const Common& com, const std::string& fnspec, const std::string& measures) {
  FnPtr f = parse_function_spec(fnspec);
  TruthTable tt = truth_table(f);
  const bool strict = !measures.empty();
  std::vector<std::string> want;
  MeasureSelection sel = MeasureSelection::all();
  if (!strict) {
    want = {"D", "s", "bs", "C", "deg", "adeg", "lambda"};
  } else {
    sel = MeasureSelection::none();
    std::stringstream ss(measures);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      want.push_back(tok);
      std::string low = tok;
      for (char& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (low == "d")
        sel.D = true;
      else if (low == "s")
        sel.s = true;
      else if (low == "bs")
        sel.bs = true;
      else if (low == "c")
        sel.C = true;
      else if (low == "deg")
        sel.deg = true;
      else if (low == "adeg")
        sel.adeg = true;
      else if (low == "lambda")
        sel.lambda = true;
      else
        throw std::runtime_error("unknown measure: " + tok);
    }
  }
  MeasureReport rep = measure_report(tt, sel);
  std::vector<MeasureCol> cols = measure_values(rep, want);
  if (strict) {
    for (const MeasureCol& c : cols)
      if (c.value == "-")
        throw std::runtime_error("measure " + c.name + " exceeds its arity cap at arity " +
                                 std::to_string(rep.arity));
  }
  deliver(com, render_row(com, cols));
  return 0;
}

int cmd_eval(const Common& com, const std::string& cons, int n, const std::string& fnspec,
             const std::string& input, const std::string& bits) {
  int value;
  if (!cons.empty()) {
    if (n == 0) n = default_n(cons);
    Construction c = Construction::make(construction_from_string(cons), n);
    value = f_eval(c, load_bits(input, bits, c.N));
  } else if (!fnspec.empty()) {
    FnPtr f = parse_function_spec(fnspec);
    value = f->eval(load_bits(input, bits, f->arity()));
  } else {
    throw std::runtime_error("provide --construction or --function");
  }
  deliver(com, std::to_string(value) + "\n");
  return 0;
}

int cmd_decode(const Common& com, const std::string& cons, int n, const std::string& hex,
               const std::string& bits) {
  if (n == 0) n = default_n(cons);
  EncodingScheme sc = scheme_from_flag(cons, n);
  BitString w;
  if (!hex.empty())
    w = BitString::from_hex(hex, static_cast<std::size_t>(sc.cellbits));
  else if (!bits.empty())
    w = BitString::from_string(bits);
  else
    throw std::runtime_error("provide --hex or --bits");
  if (static_cast<int>(w.size()) != sc.cellbits)
    throw std::runtime_error("codeword must have " + std::to_string(sc.cellbits) + " bits");
  DecodedCell d = dec(w, sc);
  std::ostringstream os;
  if (com.format == "csv") {
    os << "valid,tag,value,l,r,b\n"
       << d.valid << "," << tag_char(d.tag) << "," << d.sym.value << ","
       << coord_text(d.sym.l, sc.three_tags()) << "," << coord_text(d.sym.r, sc.three_tags())
       << "," << coord_text(d.sym.b, sc.three_tags()) << "\n";
  } else {
    os << "valid=" << d.valid << " tag=" << tag_char(d.tag) << " value=" << d.sym.value
       << " l=" << coord_text(d.sym.l, sc.three_tags())
       << " r=" << coord_text(d.sym.r, sc.three_tags())
       << " b=" << coord_text(d.sym.b, sc.three_tags()) << "\n";
  }
  deliver(com, os.str());
  return 0;
}

int cmd_witness(const Common& com, const std::string& cons, int n, const std::string& outfile) {
  if (n == 0) n = default_n(cons);
  Construction c = Construction::make(construction_from_string(cons), n);
  std::mt19937_64 rng(com.seed);
  std::vector<Coord> cert;
  BitString x = build_one_input(c, rng, &cert);
  int value = f_eval(c, x);
  InstanceMeta meta;
  meta.construction = construction_name(c.id);
  meta.n = c.n;
  meta.k = c.k;
  meta.b = 0;
  meta.seed = com.seed;
  meta.nbits = c.N;
  write_instance(outfile, x, meta);
  std::ostringstream os;
  os << "value=" << value << " cert_cells=" << cert.size() << " nbits=" << c.N << " out="
     << outfile << "\n";
  deliver(com, os.str());
  return value == 1 ? 0 : 1;
}

int cmd_orbit(const Common& com, const std::string& cons, int n) {
  if (n == 0) n = default_n(cons);
  Construction c = Construction::make(construction_from_string(cons), n);
  GeneratorSystem gs = c.generators();
  long long sz = orbit_size(gs);
  bool ok = (sz == gs.geom.N);
  std::ostringstream os;
  os << "orbit=" << sz << "/" << gs.geom.N << (ok ? " TRANSITIVE" : " INTRANSITIVE") << "\n";
  deliver(com, os.str());
  return ok ? 0 : 1;
}

int cmd_invariance(const Common& com, const std::string& cons, int n, int samples, int per_class) {
  if (n == 0) n = default_n(cons);
  Construction c = Construction::make(construction_from_string(cons), n);
  GeneratorSystem gs = c.generators();
  std::mt19937_64 rng(com.seed);
  std::vector<BitString> inputs;
  for (int i = 0; i < samples; ++i) inputs.push_back(build_one_input(c, rng));
  for (int i = 0; i < samples; ++i) {
    BitString r(static_cast<std::size_t>(c.N));
    for (long long j = 0; j < c.N; ++j) r.set(j, static_cast<int>(rng() & 1));
    inputs.push_back(std::move(r));
  }
  auto evaluator = [&c](const BitString& x) { return f_eval(c, x); };
  InvarianceReport rep = invariance_check(gs, evaluator, inputs, per_class, rng, com.threads);
  std::ostringstream os;
  os << "checks=" << rep.checks << " violations=" << rep.violations.size()
     << (rep.violations.empty() ? " PASS" : " FAIL") << "\n";
  deliver(com, os.str());
  return rep.violations.empty() ? 0 : 1;
}

int cmd_roundtrip(const Common& com, const std::string& cons, int n, int samples) {
  if (n == 0) n = default_n(cons);
  EncodingScheme sc = scheme_from_flag(cons, n);
  std::mt19937_64 rng(com.seed);
  long long failures = 0;
  for (int s = 0; s < samples; ++s) {
    SchemeSymbol sym;
    sym.value = static_cast<int>(rng() % 2);
    auto rand_comp = [&](bool want) -> std::optional<std::array<int, 3>> {
      if (!want) return std::nullopt;
      std::array<int, 3> a = {0, 0, 0};
      a[0] = static_cast<int>(rng() % sc.n) + 1;
      a[1] = static_cast<int>(rng() % sc.n) + 1;
      if (sc.three_tags()) a[2] = static_cast<int>(rng() % sc.n) + 1;
      return a;
    };
    sym.l = rand_comp(rng() % 4 != 0);
    sym.r = rand_comp(rng() % 4 != 0);
    if (rng() % 4 != 0) {
      if (sc.id == SchemeId::Dec96) {
        sym.b = std::array<int, 3>{0, static_cast<int>(rng() % sc.n) + 1, 0};
      } else {
        sym.b = rand_comp(true);
      }
    }
    Tag tag;
    if (sc.three_tags())
      tag = static_cast<Tag>(rng() % 3);
    else
      tag = (rng() % 2 == 0) ? Tag::Upright : Tag::Swapped;
    BitString w = std_encode_cell(sym, tag, sc, &rng);
    int ops = 4 + static_cast<int>(rng() % 8);
    const BlockOp kOps[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
    for (int i = 0; i < ops; ++i) {
      if (rng() % 2 == 0)
        apply_part_transposition(w, sc, static_cast<int>(rng() % (sc.parts - 1)) + 1);
      else
        apply_block_op(w, sc, static_cast<int>(rng() % sc.parts) + 1, kOps[rng() % 3]);
    }
    DecodedCell d = dec(w, sc);
    if (!d.valid || !(d.sym == sym) || d.tag != tag) ++failures;
  }
  std::ostringstream os;
  os << "samples=" << samples << " failures=" << failures
     << (failures == 0 ? " PASS" : " FAIL") << "\n";
  deliver(com, os.str());
  return failures == 0 ? 0 : 1;
}

int cmd_report(const Common& com, const std::string& table) {
  if (table != "summary") throw std::runtime_error("only the summary table exists");
  struct Row {
    const char* spec;
  };
  const Row rows[] = {{"AND:4"},  {"OR:4"},   {"PARITY:4"}, {"MAJORITY:5"},
                      {"NAND"},   {"XNOR"}, {"NW"},       {"RUB:4"},
                      {"GSS1:4"}, {"GSS2:4"}, {"KSUM:2,3,2"}};
  const std::vector<std::string> want = {"D", "s", "bs", "C", "deg", "adeg", "lambda"};
  std::ostringstream os;
  const char* sep = com.format == "csv" ? "," : " ";
  os << "function" << sep << "n";
  for (const std::string& m : want) os << sep << m;
  os << "\n";
  for (const Row& r : rows) {
    FnPtr f = parse_function_spec(r.spec);
    MeasureReport rep = measure_report(truth_table(f));
    os << r.spec << sep << rep.arity;
    for (const MeasureCol& c : measure_values(rep, want)) os << sep << c.value;
    os << "\n";
  }
  deliver(com, os.str());
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Transitive Boolean function toolkit: codecs, groups, and measures"};
  app.require_subcommand(1);

  Common com;
  std::string fnspec, cons, measures, input, bits, hex, table = "summary";
  std::string outfile = "witness.bin";
  int n = 0, inv_samples = 10, rt_samples = 1000, per_class = 3;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", com.format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    sub->add_option("--out", com.out, "write output to this file");
    sub->add_option("--seed", com.seed, "RNG seed");
    sub->add_option("--threads", com.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  CLI::App* m = app.add_subcommand("measure", "complexity measures of a function");
  m->add_option("--function", fnspec, "function spec, e.g. RUB:4 or AND:2 o OR:2")->required();
  m->add_option("--measures", measures, "comma list from D,s,bs,C,deg,adeg,lambda");
  add_common(m);

  CLI::App* e = app.add_subcommand("eval", "evaluate a construction or function on an input");
  e->add_option("--construction", cons, "F1|F2|F3a|F3b|F3c");
  e->add_option("--n", n, "matrix side");
  e->add_option("--function", fnspec, "function spec");
  e->add_option("--input", input, "instance file (with .meta sidecar)");
  e->add_option("--bits", bits, "inline 0/1 input string");
  add_common(e);

  CLI::App* d = app.add_subcommand("decode", "decode one cell codeword");
  d->add_option("--construction", cons, "construction or codec name (dec96|dec112|dec240)")
      ->required();
  d->add_option("--n", n, "matrix side");
  d->add_option("--hex", hex, "codeword as hex");
  d->add_option("--bits", bits, "codeword as 0/1 string");
  add_common(d);

  CLI::App* w = app.add_subcommand("witness", "build a 1-input and write it as an instance file");
  w->add_option("--construction", cons, "F1|F2|F3a|F3b|F3c")->required();
  w->add_option("--n", n, "matrix side");
  w->add_option("--out-file", outfile, "instance path (sidecar gets .meta)");
  add_common(w);

  CLI::App* o = app.add_subcommand("orbit", "orbit size of the generator system");
  o->add_option("--construction", cons, "F1|F2|F3a|F3b|F3c")->required();
  o->add_option("--n", n, "matrix side");
  add_common(o);

  CLI::App* iv = app.add_subcommand("invariance", "check f(sigma(x)) = f(x) on sampled inputs");
  iv->add_option("--construction", cons, "F1|F2|F3a|F3b|F3c")->required();
  iv->add_option("--n", n, "matrix side");
  iv->add_option("--samples", inv_samples, "builder inputs (plus as many random)");
  iv->add_option("--per-class", per_class, "sampled generators per class");
  add_common(iv);

  CLI::App* rt = app.add_subcommand("roundtrip", "random encode/scramble/decode self-test");
  rt->add_option("--construction", cons, "construction or codec name")->required();
  rt->add_option("--n", n, "matrix side");
  rt->add_option("--samples", rt_samples, "words to test");
  add_common(rt);

  CLI::App* rp = app.add_subcommand("report", "measure table for the named functions");
  rp->add_option("--table", table, "summary");
  add_common(rp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    int rc = app.exit(ex);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(m)) return cmd_measure(com, fnspec, measures);
    if (app.got_subcommand(e)) return cmd_eval(com, cons, n, fnspec, input, bits);
    if (app.got_subcommand(d)) return cmd_decode(com, cons, n, hex, bits);
    if (app.got_subcommand(w)) return cmd_witness(com, cons, n, outfile);
    if (app.got_subcommand(o)) return cmd_orbit(com, cons, n);
    if (app.got_subcommand(iv)) return cmd_invariance(com, cons, n, inv_samples, per_class);
    if (app.got_subcommand(rt)) return cmd_roundtrip(com, cons, n, rt_samples);
    if (app.got_subcommand(rp)) return cmd_report(com, table);
  } catch (const CLI::Error& ex) {
    std::cerr << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tbf
