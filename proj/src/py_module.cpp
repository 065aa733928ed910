// Python bindings for the core operations: function parsing and measures,
// cell codecs, the encoded pointer-matrix constructions with their symmetry
// checks, and the k-sum gadget functions.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>

#include "tbf/boolfn.hpp"
#include "tbf/constructions.hpp"
#include "tbf/io.hpp"
#include "tbf/measures.hpp"

namespace py = pybind11;

namespace {

using namespace tbf;

EncodingScheme scheme_by_name(const std::string& name, int n) {
  std::string t = name;
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "dec96") return EncodingScheme::make(SchemeId::Dec96, n);
  if (t == "dec112") return EncodingScheme::make(SchemeId::Dec112, n);
  if (t == "dec240") return EncodingScheme::make(SchemeId::Dec240, n);
  return Construction::make(construction_from_string(name), n).scheme;
}

BitString bits_arg(const std::string& s, long long want, const char* what) {
  BitString x = BitString::from_string(s);
  if (want >= 0 && static_cast<long long>(x.size()) != want)
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(want) +
                                " bits, got " + std::to_string(x.size()));
  return x;
}

py::object opt_ptr(const std::optional<std::array<int, 3>>& p) {
  if (!p) return py::none();
  return py::make_tuple((*p)[0], (*p)[1], (*p)[2]);
}

std::optional<std::array<int, 3>> ptr_arg(const py::object& o) {
  if (o.is_none()) return std::nullopt;
  auto t = o.cast<std::vector<int>>();
  if (t.size() != 3) throw std::invalid_argument("pointer must be a 3-tuple or None");
  return std::array<int, 3>{t[0], t[1], t[2]};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Transitive Boolean function toolkit core";

  // --- functions and measures ------------------------------------------------
  m.def(
      "function_arity",
      [](const std::string& spec) { return parse_function_spec(spec)->arity(); },
      py::arg("spec"), "Arity of a function spec such as 'RUB:4' or 'AND:2 o OR:2'.");

  m.def(
      "eval_function",
      [](const std::string& spec, const std::string& bits) {
        FnPtr f = parse_function_spec(spec);
        return f->eval(bits_arg(bits, f->arity(), "input"));
      },
      py::arg("spec"), py::arg("bits"), "Evaluate a function spec on a 0/1 input string.");

  m.def(
      "measures",
      [](const std::string& spec) {
        MeasureReport rep = measure_report(truth_table(parse_function_spec(spec)));
        py::dict d;
        d["arity"] = rep.arity;
        if (rep.D) d["D"] = *rep.D;
        if (rep.s) d["s"] = *rep.s;
        if (rep.bs) d["bs"] = *rep.bs;
        if (rep.C) d["C"] = *rep.C;
        if (rep.deg) d["deg"] = *rep.deg;
        if (rep.adeg) d["adeg"] = *rep.adeg;
        if (rep.lambda) d["lambda"] = *rep.lambda;
        return d;
      },
      py::arg("spec"),
      "Complexity measures of a function spec; measures above their arity caps are omitted.");

  // --- cell codec ------------------------------------------------------------
  m.def(
      "encode_cell",
      [](const std::string& scheme, int n, int value, const py::object& l, const py::object& r,
         const py::object& b, const std::string& tag, const py::object& seed) {
        EncodingScheme sc = scheme_by_name(scheme, n);
        SchemeSymbol sym;
        sym.value = value;
        sym.l = ptr_arg(l);
        sym.r = ptr_arg(r);
        sym.b = ptr_arg(b);
        if (tag.size() != 1) throw std::invalid_argument("tag must be one of > ^ <");
        if (seed.is_none()) return std_encode_cell(sym, tag_from_char(tag[0]), sc).to_string();
        std::mt19937_64 rng(seed.cast<std::uint64_t>());
        return std_encode_cell(sym, tag_from_char(tag[0]), sc, &rng).to_string();
      },
      py::arg("scheme"), py::arg("n"), py::arg("value"), py::arg("l") = py::none(),
      py::arg("r") = py::none(), py::arg("b") = py::none(), py::arg("tag") = ">",
      py::arg("seed") = py::none(),
      "Standard-form cell codeword (as a 0/1 string) for one cell symbol.");

  m.def(
      "decode_cell",
      [](const std::string& scheme, int n, const std::string& bits) {
        EncodingScheme sc = scheme_by_name(scheme, n);
        DecodedCell d = dec(bits_arg(bits, sc.cellbits, "codeword"), sc);
        py::dict out;
        out["valid"] = d.valid;
        out["value"] = d.sym.value;
        out["tag"] = std::string(1, tag_char(d.tag));
        out["l"] = opt_ptr(d.sym.l);
        out["r"] = opt_ptr(d.sym.r);
        out["b"] = opt_ptr(d.sym.b);
        return out;
      },
      py::arg("scheme"), py::arg("n"), py::arg("bits"),
      "Total decoder for one cell codeword; invalid words come back valid=False.");

  m.def(
      "cellbits",
      [](const std::string& scheme, int n) { return scheme_by_name(scheme, n).cellbits; },
      py::arg("scheme"), py::arg("n"));

  // --- constructions ---------------------------------------------------------
  m.def(
      "construction_info",
      [](const std::string& name, int n) {
        Construction c = Construction::make(construction_from_string(name), n);
        py::dict d;
        d["name"] = construction_name(c.id);
        d["n"] = c.n;
        d["rows"] = c.rows;
        d["cols"] = c.cols;
        d["k"] = c.k;
        d["N"] = c.N;
        d["cellbits"] = c.scheme.cellbits;
        return d;
      },
      py::arg("construction"), py::arg("n"));

  m.def(
      "construction_eval",
      [](const std::string& name, int n, const std::string& bits) {
        Construction c = Construction::make(construction_from_string(name), n);
        return f_eval(c, bits_arg(bits, c.N, "input"));
      },
      py::arg("construction"), py::arg("n"), py::arg("bits"),
      "Evaluate a construction on a full N-bit input given as a 0/1 string.");

  m.def(
      "build_witness",
      [](const std::string& name, int n, std::uint64_t seed) {
        Construction c = Construction::make(construction_from_string(name), n);
        std::mt19937_64 rng(seed);
        std::vector<Coord> cert;
        BitString x = build_one_input(c, rng, &cert);
        return py::make_tuple(x.to_string(), f_eval(c, x), cert.size());
      },
      py::arg("construction"), py::arg("n"), py::arg("seed") = 0,
      "Random 1-input: returns (bits, value, certificate cell count).");

  m.def(
      "orbit",
      [](const std::string& name, int n) {
        Construction c = Construction::make(construction_from_string(name), n);
        GeneratorSystem gs = c.generators();
        return py::make_tuple(orbit_size(gs), gs.geom.N);
      },
      py::arg("construction"), py::arg("n"),
      "(orbit size of bit position 0, total bit count N).");

  m.def(
      "invariance",
      [](const std::string& name, int n, int samples, int per_class, std::uint64_t seed,
         int threads) {
        Construction c = Construction::make(construction_from_string(name), n);
        GeneratorSystem gs = c.generators();
        std::mt19937_64 rng(seed);
        std::vector<BitString> inputs;
        for (int i = 0; i < samples; ++i) inputs.push_back(build_one_input(c, rng));
        for (int i = 0; i < samples; ++i) {
          BitString x(static_cast<std::size_t>(c.N));
          for (long long j = 0; j < c.N; ++j) x.set(j, static_cast<int>(rng() & 1));
          inputs.push_back(std::move(x));
        }
        auto evaluator = [&c](const BitString& x) { return f_eval(c, x); };
        InvarianceReport rep = invariance_check(gs, evaluator, inputs, per_class, rng, threads);
        py::dict d;
        d["checks"] = rep.checks;
        d["violations"] = rep.violations.size();
        return d;
      },
      py::arg("construction"), py::arg("n"), py::arg("samples") = 5, py::arg("per_class") = 2,
      py::arg("seed") = 0, py::arg("threads") = 1,
      "Sample generators and inputs, verify f(sigma(x)) == f(x).");

  // --- k-sum gadget functions ------------------------------------------------
  m.def(
      "enc_ksum",
      [](long long b, int k, int nblocks, const std::string& bits) {
        KSumParams p = KSumParams::make(b, k);
        return enc_ksum_eval(p, nblocks, bits_arg(bits, 1LL * nblocks * p.blockbits, "input"));
      },
      py::arg("b"), py::arg("k"), py::arg("nblocks"), py::arg("bits"));

  m.def(
      "enc_block_ksum",
      [](long long b, int k, int nblocks, const std::string& bits) {
        KSumParams p = KSumParams::make(b, k);
        return enc_block_ksum_eval(p, nblocks,
                                   bits_arg(bits, 1LL * nblocks * p.blockbits, "input"));
      },
      py::arg("b"), py::arg("k"), py::arg("nblocks"), py::arg("bits"));

  m.def(
      "f_qvsc",
      [](long long b, const std::string& bits) {
        return f_qvsc_eval(b, bits_arg(bits, f_qvsc_arity(b), "input"));
      },
      py::arg("b"), py::arg("bits"));

  m.def("f_qvsc_arity", &tbf::f_qvsc_arity, py::arg("b"));
}
