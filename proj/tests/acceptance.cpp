// Acceptance gate: one pass/fail line per criterion, exact values and pinned
// tolerances, nonzero exit when anything fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tbf/constructions.hpp"
#include "tbf/measures.hpp"

using namespace tbf;

namespace {

using Clock = std::chrono::steady_clock;

std::mt19937_64* g_rng = nullptr;

long long rnd(long long mod) { return static_cast<long long>((*g_rng)() % mod); }

BitString random_bits(long long n) {
  BitString x(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) x.set(static_cast<std::size_t>(i), static_cast<int>((*g_rng)() & 1));
  return x;
}

SchemeSymbol random_symbol(const EncodingScheme& sc) {
  SchemeSymbol sym;
  sym.value = static_cast<int>(rnd(2));
  auto comp = [&]() {
    std::array<int, 3> a = {static_cast<int>(rnd(sc.n)) + 1, static_cast<int>(rnd(sc.n)) + 1, 0};
    if (sc.three_tags()) a[2] = static_cast<int>(rnd(sc.n)) + 1;
    return a;
  };
  if (rnd(4) != 0) sym.l = comp();
  if (rnd(4) != 0) sym.r = comp();
  if (rnd(4) != 0) {
    if (sc.id == SchemeId::Dec96)
      sym.b = std::array<int, 3>{0, static_cast<int>(rnd(sc.n)) + 1, 0};
    else
      sym.b = comp();
  }
  return sym;
}

Tag random_tag(const EncodingScheme& sc) {
  if (sc.three_tags()) return static_cast<Tag>(rnd(3));
  return rnd(2) == 0 ? Tag::Upright : Tag::Swapped;
}

void scramble(BitString& w, const EncodingScheme& sc, int ops) {
  const BlockOp kOps[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
  for (int i = 0; i < ops; ++i) {
    if (rnd(2) == 0)
      apply_part_transposition(w, sc, static_cast<int>(rnd(sc.parts - 1)) + 1);
    else
      apply_block_op(w, sc, static_cast<int>(rnd(sc.parts)) + 1, kOps[rnd(3)]);
  }
}

// ---------------------------------------------------------------------------

bool crit1_rub_measures(std::string& d) {
  MeasureSelection sel = MeasureSelection::none();
  sel.s = sel.bs = true;
  MeasureReport r = measure_report(truth_table(parse_function_spec("RUB:4")), sel);
  std::ostringstream os;
  os << "s=" << (r.s ? std::to_string(*r.s) : "?") << " bs="
     << (r.bs ? std::to_string(*r.bs) : "?");
  d = os.str();
  return r.s && *r.s == 4 && r.bs && *r.bs == 8;
}

bool crit2_measure_order(std::string& d) {
  long long checked = 0, viol = 0;
  auto check_tt = [&](const TruthTable& tt) {
    MeasureReport r = measure_report(tt);
    ++checked;
    bool ok = r.s && r.bs && r.C && r.D && r.deg && r.adeg && r.lambda && *r.s <= *r.bs &&
              *r.bs <= *r.C && *r.C <= *r.D && *r.D <= tt.arity && *r.deg <= *r.D &&
              *r.adeg <= *r.deg && *r.lambda <= *r.s + 1e-6;
    if (!ok) ++viol;
  };
  for (int m = 0; m < 256; ++m) {
    TruthTable tt;
    tt.arity = 3;
    tt.rows.resize(8);
    for (int i = 0; i < 8; ++i) tt.rows[i] = static_cast<std::uint8_t>((m >> i) & 1);
    check_tt(tt);
  }
  for (int t = 0; t < 1000; ++t) {
    TruthTable tt;
    tt.arity = 4 + static_cast<int>(rnd(3));
    tt.rows.resize(1u << tt.arity);
    for (auto& r : tt.rows) r = static_cast<std::uint8_t>(rnd(2));
    check_tt(tt);
  }
  d = std::to_string(checked) + " functions, " + std::to_string(viol) + " violations";
  return viol == 0;
}

bool crit3_compositions(std::string& d) {
  MeasureSelection selD = MeasureSelection::none();
  selD.D = true;
  MeasureSelection selDeg = MeasureSelection::none();
  selDeg.deg = true;
  int d1 = *measure_report(truth_table(parse_function_spec("AND:2 o OR:2")), selD).D;
  int d2 = *measure_report(truth_table(parse_function_spec("OR:2 o AND:2")), selD).D;
  int g = *measure_report(truth_table(parse_function_spec("PARITY:2 o PARITY:2")), selDeg).deg;
  bool it = truth_table(iterate(make_named("PARITY", {2}), 2)) ==
            truth_table(make_named("PARITY", {4}));
  std::ostringstream os;
  os << "D(AND:2 o OR:2)=" << d1 << " D(OR:2 o AND:2)=" << d2
     << " deg(PARITY:2 o PARITY:2)=" << g << " iterate==PARITY:4=" << (it ? "yes" : "no");
  d = os.str();
  return d1 == 4 && d2 == 4 && g == 4 && it;
}

bool crit4_codec_roundtrip(std::string& d) {
  long long fail = 0, words = 0;
  const struct {
    SchemeId id;
    int n;
  } lines[] = {{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16}, {SchemeId::Dec240, 8}};
  for (const auto& ln : lines) {
    EncodingScheme sc = EncodingScheme::make(ln.id, ln.n);
    for (int s = 0; s < 200; ++s) {
      SchemeSymbol sym = random_symbol(sc);
      Tag tag = random_tag(sc);
      BitString base = std_encode_cell(sym, tag, sc, g_rng);
      for (int w = 0; w < 1000; ++w) {
        BitString word = base;
        scramble(word, sc, static_cast<int>(rnd(9)));
        DecodedCell dc = dec(word, sc);
        ++words;
        if (!dc.valid || !(dc.sym == sym) || dc.tag != tag) ++fail;
      }
    }
    for (int s = 0; s < 50; ++s) {
      SchemeSymbol sym = random_symbol(sc);
      Tag tag = random_tag(sc);
      BitString w = std_encode_cell(sym, tag, sc, g_rng);
      if (!sc.three_tags()) {
        apply_per_block_push(w, sc, swap_half_push(sc.blocklen));
        Tag want = tag == Tag::Upright ? Tag::Swapped : Tag::Upright;
        DecodedCell dc = dec(w, sc);
        if (!dc.valid || !(dc.sym == sym) || dc.tag != want) ++fail;
      } else {
        auto advance = [](Tag t) {
          return t == Tag::Upright ? Tag::Rotated : (t == Tag::Rotated ? Tag::Swapped : Tag::Upright);
        };
        apply_per_block_push(w, sc, rot1_push(sc.blocklen));
        DecodedCell dc = dec(w, sc);
        if (!dc.valid || !(dc.sym == sym) || dc.tag != advance(tag)) ++fail;
        apply_per_block_push(w, sc, rot2_push(sc.blocklen));
        dc = dec(w, sc);
        if (!dc.valid || !(dc.sym == sym) || dc.tag != tag) ++fail;
      }
    }
    if (dec(BitString(static_cast<std::size_t>(sc.cellbits)), sc).valid) ++fail;
    for (int s = 0; s < 50; ++s) {
      BitString w = std_encode_cell(random_symbol(sc), random_tag(sc), sc, g_rng);
      int part = static_cast<int>(rnd(sc.parts)) + 1;
      for (int i = 0; i < 4 * sc.blocklen; ++i)
        w.set(static_cast<std::size_t>(sc.part_offset(part) + i), 1);
      if (dec(w, sc).valid) ++fail;
    }
  }
  d = std::to_string(words) + " scrambled words + transitions + invalids, " +
      std::to_string(fail) + " failures";
  return fail == 0;
}

bool crit5_weight_ledger(std::string& d) {
  long long checked = 0, bad = 0;
  const struct {
    SchemeId id;
    int n;
  } lines[] = {{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16}, {SchemeId::Dec240, 8}};
  for (const auto& ln : lines) {
    EncodingScheme sc = EncodingScheme::make(ln.id, ln.n);
    for (int V = 0; V <= 1; ++V) {
      SchemeSymbol sym;
      sym.value = V;
      std::array<int, 3> full = {1, 2, sc.three_tags() ? 3 : 0};
      sym.l = full;
      sym.r = full;
      sym.b = sc.id == SchemeId::Dec96 ? std::array<int, 3>{0, 2, 0} : full;
      for (Tag tag : {Tag::Upright, Tag::Swapped}) {
        BitString w = std_encode_cell(sym, tag, sc);
        for (int p = 1; p <= sc.parts; ++p) {
          int expect = p == 1 ? (sc.id == SchemeId::Dec240 ? 16 * sc.logn - V
                                                           : 12 * sc.logn + 2 - V)
                              : 7 * sc.logn + 4 + p;
          int total = static_cast<int>(
              w.weight_range(static_cast<std::size_t>(sc.part_offset(p)), 4 * sc.blocklen));
          ++checked;
          if (total != expect || sc.part_total(p, V) != expect) ++bad;
          // block roles by weight inside the part
          int wb2 = p == 1 ? sc.blocklen : 2 * sc.logn + 1 + p;
          std::vector<int> want = {expect - wb2 - sc.b3_weight() - sc.b4_weight(), wb2,
                                   sc.b3_weight(), sc.b4_weight()};
          std::vector<int> got;
          for (int s = 1; s <= 4; ++s)
            got.push_back(static_cast<int>(w.weight_range(
                static_cast<std::size_t>(sc.block_offset(p, s)), sc.blocklen)));
          std::sort(want.begin(), want.end());
          std::sort(got.begin(), got.end());
          ++checked;
          if (want != got) ++bad;
        }
      }
    }
  }
  d = std::to_string(checked) + " weight checks, " + std::to_string(bad) + " mismatches";
  return bad == 0;
}

bool crit6_transitivity(std::string& d) {
  long long o1 = orbit_size(GeneratorSystem::make(SchemeId::Dec96, 16));
  long long o2 = orbit_size(GeneratorSystem::make(SchemeId::Dec112, 16));
  GeneratorSystem g3 = GeneratorSystem::make(SchemeId::Dec240, 8);
  int good = 0;
  for (int t = 0; t < 1000; ++t) {
    long long p = rnd(g3.geom.N), q = rnd(g3.geom.N);
    long long cur = p;
    for (const auto& g : map_index(g3, p, q)) cur = g3.apply_index(g, cur);
    if (cur == q) ++good;
  }
  std::ostringstream os;
  os << "orbit(F1)=" << o1 << "/98304 orbit(F2)=" << o2 << "/114688 F3-words " << good
     << "/1000";
  d = os.str();
  return o1 == 98304 && o2 == 114688 && good == 1000;
}

bool crit7_invariance(std::string& d) {
  std::ostringstream os;
  bool pass = true;
  const struct {
    ConstructionId id;
    int n;
  } lines[] = {{ConstructionId::F1, 16}, {ConstructionId::F2, 16}, {ConstructionId::F3b, 8}};
  for (const auto& ln : lines) {
    auto t0 = Clock::now();
    Construction c = Construction::make(ln.id, ln.n);
    GeneratorSystem gs = c.generators();
    std::vector<BitString> inputs;
    for (int i = 0; i < 100; ++i) inputs.push_back(build_one_input(c, *g_rng));
    for (int i = 0; i < 100; ++i) inputs.push_back(random_bits(c.N));
    auto evaluator = [&c](const BitString& x) { return f_eval(c, x); };
    InvarianceReport rep = invariance_check(gs, evaluator, inputs, 3, *g_rng, 4);
    int classes = 0;
    long long min_class = -1;
    for (long long v : rep.per_class)
      if (v > 0) {
        ++classes;
        min_class = min_class < 0 ? v : std::min(min_class, v);
      }
    InvarianceReport broken = invariance_check(gs, evaluator, inputs, 1, *g_rng, 4, true);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool ok = rep.violations.empty() && classes == (c.scheme.three_tags() ? 4 : 3) &&
              min_class >= 500 && !broken.violations.empty() && secs < 300.0;
    pass = pass && ok;
    os << construction_name(c.id) << ":" << rep.checks << "ck/" << rep.violations.size()
       << "v/min-class " << min_class << "/neg " << broken.violations.size() << " ("
       << static_cast<int>(secs) << "s) ";
  }
  d = os.str();
  return pass;
}

bool crit8_exclusivity(std::string& d) {
  long long worlds = 0, bad = 0;
  auto branches = [](const ModResult& r) {
    return static_cast<int>(r.branch[0]) + static_cast<int>(r.branch[1]) +
           static_cast<int>(r.branch[2]);
  };
  auto tally = [&](const ModResult& r) {
    ++worlds;
    if (branches(r) > 1) ++bad;
  };
  auto retag = [](TagGrid g, Tag t) {
    for (auto& x : g.t) x = t;
    return g;
  };
  for (int t = 0; t < 100; ++t) {
    BuiltInstance a1 = build_one_instance(Variant::A1, 16, 16, 1, *g_rng);
    tally(mod_a1_eval(a1.B, a1.C));
    tally(mod_a1_eval(transpose(a1.B), transpose(a1.C)));
    tally(mod_a1_eval(transpose(a1.B), retag(transpose(a1.C), Tag::Swapped)));

    BuiltInstance a2 = build_one_instance(Variant::A2, 16, 16, 1, *g_rng);
    tally(mod_a2_eval(a2.B, a2.C));
    tally(mod_a2_eval(transpose(a2.B), transpose(a2.C)));
    tally(mod_a2_eval(transpose(a2.B), retag(transpose(a2.C), Tag::Swapped)));

    BuiltInstance a3 = build_one_instance(Variant::A3, 16, 16, 1, *g_rng);
    tally(mod_a3_eval(a3.B, a3.C, 1));
    tally(mod_a3_eval(transpose(a3.B), retag(transpose(a3.C), Tag::Swapped), 1));

    BuiltInstance s = build_one_instance(Variant::A3, 8, 64, 8, *g_rng, 3);
    tally(mod_a3star_eval(s.B, s.C, 8));
    tally(mod_a3star_eval(brick_rot(s.B, BrickRot::Swapped),
                          retag(brick_rot(s.C, BrickRot::Swapped), Tag::Rotated), 8));
    tally(mod_a3star_eval(brick_rot(s.B, BrickRot::Top),
                          retag(brick_rot(s.C, BrickRot::Top), Tag::Swapped), 8));
    tally(mod_a3star_eval(brick_rot(s.B, BrickRot::Top), brick_rot(s.C, BrickRot::Top), 8));
  }
  d = std::to_string(worlds) + " worlds, " + std::to_string(bad) + " double acceptances";
  return bad == 0;
}

bool crit9_ksum_oracle(std::string& d) {
  long long agree = 0, total = 0, ones = 0;
  auto oracle = [](const KSumParams& p, int nblocks, const BitString& x) {
    std::vector<std::optional<long long>> vals;
    for (int i = 0; i < nblocks; ++i)
      vals.push_back(
          ksum_decode_block(x.slice(static_cast<std::size_t>(i) * p.blockbits, p.blockbits), p));
    std::function<bool(int, int, long long)> go = [&](int idx, int left, long long sum) -> bool {
      if (left == 0) return sum % p.alphabet == 0;
      if (idx == nblocks) return false;
      if (vals[idx] && go(idx + 1, left - 1, (sum + *vals[idx]) % p.alphabet)) return true;
      return go(idx + 1, left, sum);
    };
    return go(0, p.k, 0) ? 1 : 0;
  };
  const struct {
    long long b;
    int k, nblocks;
  } lines[] = {{4, 1, 3}, {4, 2, 4}};
  for (const auto& ln : lines) {
    KSumParams p = KSumParams::make(ln.b, ln.k);
    long long len = static_cast<long long>(ln.nblocks) * p.blockbits;
    for (int t = 0; t < 10000; ++t) {
      BitString x = random_bits(len);
      int a = enc_ksum_eval(p, ln.nblocks, x);
      ones += a;
      ++total;
      if (a == oracle(p, ln.nblocks, x)) ++agree;
    }
    for (int t = 0; t < 100; ++t) {
      BitString x(static_cast<std::size_t>(len));
      for (int i = 0; i < ln.nblocks; ++i) {
        BitString blk;
        switch (rnd(4)) {
          case 0: blk = ksum_encode_value(rnd(p.alphabet), p); break;
          case 1: blk = ksum_encode_value(rnd(p.alphabet), p, g_rng); break;
          case 2: blk = BitString(static_cast<std::size_t>(p.blockbits)); break;
          default: blk = random_bits(p.blockbits); break;
        }
        x.assign_range(static_cast<std::size_t>(i) * p.blockbits, blk);
      }
      int a = enc_ksum_eval(p, ln.nblocks, x);
      ones += a;
      ++total;
      if (a == oracle(p, ln.nblocks, x)) ++agree;
    }
  }
  d = std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(ones) +
      " accepted)";
  return agree == total && ones > 0;
}

bool crit10_desensitization(std::string& d) {
  bool eq = truth_table(desensitize(make_named("AND", {2}), {{{1, 1}, {2, 1}}})) ==
            truth_table(make_named("AND", {6}));

  FnPtr fdt = desensitize(make_named("PARITY", {2}), {{{1, 1}, {2, 0}}, {{1, 0}, {2, 1}}});
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  long long viol = 0;
  std::uint8_t x[6], y[6];
  for (int mask = 0; mask < 64; ++mask) {
    for (int i = 0; i < 6; ++i) x[i] = static_cast<std::uint8_t>((mask >> i) & 1);
    int base = fdt->eval_bits(x);
    for (const auto& pi : perms)
      for (int diag = 0; diag < 2; ++diag) {
        for (int c = 0; c < 3; ++c)
          for (int j = 0; j < 2; ++j) y[2 * c + j] = x[2 * pi[c] + (diag ? 1 - j : j)];
        if (fdt->eval_bits(y) != base) ++viol;
      }
  }
  d = std::string("AND:6 equality ") + (eq ? "yes" : "no") + ", " + std::to_string(viol) +
      " generator violations";
  return eq && viol == 0;
}

bool crit11_matrix_invariance(std::string& d) {
  long long viol = 0;
  auto random_perm = [&]() {
    std::vector<int> p = {1, 2, 3, 4};
    for (int i = 3; i > 0; --i) std::swap(p[i], p[rnd(i + 1)]);
    return p;
  };
  for (int t = 0; t < 100; ++t) {
    PointerMatrix M(MatrixType::ColPtr, 4, 4);
    for (int r = 1; r <= 4; ++r)
      for (int c = 1; c <= 4; ++c) {
        Cell cell;
        cell.value = static_cast<int>(rnd(2));
        if (rnd(2) == 0) cell.l = Coord{static_cast<int>(rnd(4)) + 1, static_cast<int>(rnd(4)) + 1};
        if (rnd(2) == 0) cell.r = Coord{static_cast<int>(rnd(4)) + 1, static_cast<int>(rnd(4)) + 1};
        if (rnd(2) == 0) cell.bcol = static_cast<int>(rnd(4)) + 1;
        M.at(r, c) = cell;
      }
    int base = a1_eval(M).value;
    for (int s = 0; s < 50; ++s)
      if (a1_eval(permute_matrix(M, random_perm(), random_perm())).value != base) ++viol;
  }
  d = "5000 permuted evaluations, " + std::to_string(viol) + " violations";
  return viol == 0;
}

}  // namespace

int main() {
  struct Crit {
    int idx;
    const char* name;
    double budget;
    bool (*fn)(std::string&);
  };
  const Crit crits[] = {
      {1, "rub-measures", 5, crit1_rub_measures},
      {2, "measure-order-invariants", 60, crit2_measure_order},
      {3, "composition-exactness", 5, crit3_compositions},
      {4, "codec-roundtrip", 60, crit4_codec_roundtrip},
      {5, "standard-form-weights", 5, crit5_weight_ledger},
      {6, "group-transitivity", 300, crit6_transitivity},
      {7, "function-invariance", 900, crit7_invariance},
      {8, "mod-branch-exclusivity", 60, crit8_exclusivity},
      {9, "ksum-oracle-equivalence", 60, crit9_ksum_oracle},
      {10, "desensitization", 5, crit10_desensitization},
      {11, "pointer-matrix-invariance", 30, crit11_matrix_invariance},
  };
  int failed = 0;
  for (const Crit& c : crits) {
    std::mt19937_64 rng(0xC0FFEE ^ static_cast<std::uint64_t>(c.idx));
    g_rng = &rng;
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_budget = secs < c.budget;
    if (!(ok && in_budget)) ++failed;
    std::printf("[%s] %2d %-26s %s [%.2fs/%.0fs]\n", ok && in_budget ? "PASS" : "FAIL", c.idx,
                c.name, detail.c_str(), secs, c.budget);
    std::fflush(stdout);
  }
  std::printf("%s: %d/11 criteria passed\n", failed == 0 ? "ACCEPTED" : "REJECTED", 11 - failed);
  return failed == 0 ? 0 : 1;
}
