#include <random>
#include <vector>

#include "doctest.h"
#include "tbf/constructions.hpp"

using namespace tbf;

namespace {

BitString zeros(std::size_t n) { return BitString(n); }

BitString ones(std::size_t n) {
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, 1);
  return x;
}

BitString concat(const std::vector<BitString>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  BitString out(total);
  std::size_t off = 0;
  for (const auto& p : parts) {
    out.assign_range(off, p);
    off += p.size();
  }
  return out;
}

}  // namespace

TEST_CASE("constructions build inputs their evaluators accept") {
  std::mt19937_64 rng(3);
  struct Line {
    ConstructionId id;
    int n, rows, cols, k;
  };
  const Line lines[] = {
      {ConstructionId::F1, 16, 16, 16, 1},  {ConstructionId::F2, 16, 16, 16, 1},
      {ConstructionId::F3a, 16, 16, 16, 1}, {ConstructionId::F3b, 8, 8, 64, 8},
      {ConstructionId::F3c, 8, 8, 64, 1},
  };
  for (const auto& ln : lines) {
    CAPTURE(construction_name(ln.id));
    Construction c = Construction::make(ln.id, ln.n);
    CHECK(c.rows == ln.rows);
    CHECK(c.cols == ln.cols);
    CHECK(c.k == ln.k);
    CHECK(c.N == static_cast<long long>(ln.rows) * ln.cols * (c.N / (ln.rows * ln.cols)));

    std::vector<Coord> cert;
    BitString x = build_one_input(c, rng, &cert);
    REQUIRE(static_cast<long long>(x.size()) == c.N);
    CHECK(!cert.empty());
    CHECK(f_eval(c, x) == 1);
    ModResult d = f_eval_detail(c, x);
    CHECK(d.value == 1);
    CHECK(d.branch[0]);

    CHECK(f_eval(c, zeros(static_cast<std::size_t>(c.N))) == 0);

    DecodedInput in = decode_input(c, x);
    CHECK(in.B.m == ln.rows);
    CHECK(in.B.n == ln.cols);
    CHECK(in.C.m == ln.rows);
    CHECK(in.C.n == ln.cols);
    CHECK(in.B.type == (ln.id == ConstructionId::F1 ? MatrixType::ColPtr : MatrixType::CellPtr));
    CHECK(static_cast<int>(find_marked_columns(in.B).size()) == ln.k);
  }
}

TEST_CASE("wiping one marked-column cell defeats the evaluator") {
  std::mt19937_64 rng(17);
  for (ConstructionId id : {ConstructionId::F1, ConstructionId::F2, ConstructionId::F3b}) {
    CAPTURE(construction_name(id));
    int n = id == ConstructionId::F3b ? 8 : 16;
    Construction c = Construction::make(id, n);
    BitString x = build_one_input(c, rng);
    REQUIRE(f_eval(c, x) == 1);

    DecodedInput in = decode_input(c, x);
    auto marked = find_marked_columns(in.B);
    REQUIRE(!marked.empty());
    auto [col, special_row] = marked[0];
    int row = special_row == 1 ? 2 : 1;

    Geometry geom = c.geometry();
    long long cellbits = c.N / (static_cast<long long>(c.rows) * c.cols);
    long long base = geom.to_flat({row, col, 1, 1, 1});
    Geometry::Addr last = geom.to_addr(base + cellbits - 1);
    REQUIRE(last.r == row);  // a cell's bits are one contiguous range
    REQUIRE(last.c == col);
    for (long long i = base; i < base + cellbits; ++i) x.set(static_cast<std::size_t>(i), 0);

    CHECK(f_eval(c, x) == 0);
  }
}

TEST_CASE("slot-gadget blocks round-trip and reject junk") {
  KSumParams p = KSumParams::make(4, 2);
  CHECK(p.logb == 2);
  CHECK(p.gadgets == 4);
  CHECK(p.slotlen == 6);
  CHECK(p.blockbits == 96);
  CHECK(p.alphabet == 16);

  std::mt19937_64 rng(9);
  for (long long v = 0; v < p.alphabet; ++v) {
    BitString plain = ksum_encode_value(v, p);
    BitString shuffled = ksum_encode_value(v, p, &rng);
    CHECK(ksum_decode_block(plain, p) == v);
    CHECK(ksum_decode_block(shuffled, p) == v);
  }
  CHECK(!ksum_decode_block(zeros(p.blockbits), p).has_value());
  CHECK(!ksum_decode_block(ones(p.blockbits), p).has_value());
}

TEST_CASE("k-sum over encoded blocks") {
  KSumParams p2 = KSumParams::make(4, 2);
  auto enc = [&](long long v) { return ksum_encode_value(v, p2); };
  // 3 + 13 = 16 = 0 mod 16, over two distinct blocks
  CHECK(enc_ksum_eval(p2, 3, concat({enc(3), enc(13), zeros(p2.blockbits)})) == 1);
  CHECK(enc_ksum_eval(p2, 3, concat({enc(3), enc(12), zeros(p2.blockbits)})) == 0);
  CHECK(enc_ksum_eval(p2, 3, concat({enc(0), enc(0), zeros(p2.blockbits)})) == 1);
  CHECK_THROWS_AS(enc_ksum_eval(p2, 2, zeros(5)), std::invalid_argument);

  KSumParams p1 = KSumParams::make(4, 1);
  auto enc1 = [&](long long v) { return ksum_encode_value(v, p1); };
  CHECK(enc_ksum_eval(p1, 1, enc1(0)) == 1);
  CHECK(enc_ksum_eval(p1, 1, enc1(1)) == 0);
  CHECK(enc_ksum_eval(p1, 2, concat({enc1(3), enc1(1)})) == 0);
  CHECK(enc_ksum_eval(p1, 2, concat({enc1(1), enc1(0)})) == 1);

  // the dense-rest variant also polices undecodable blocks
  CHECK(enc_block_ksum_eval(p1, 2, concat({enc1(0), ones(p1.blockbits)})) == 1);
  CHECK(enc_block_ksum_eval(p1, 2, concat({enc1(0), zeros(p1.blockbits)})) == 0);
  CHECK(enc_block_ksum_eval(p1, 2, concat({enc1(1), ones(p1.blockbits)})) == 0);

  FnPtr f = make_enc_ksum(4, 2, 3);
  CHECK(f->arity() == 3 * p2.blockbits);
  CHECK(f->eval(concat({enc(3), enc(13), zeros(p2.blockbits)})) == 1);
  CHECK_THROWS_AS(make_enc_ksum(4, 2, 1), std::invalid_argument);
  FnPtr g = make_enc_block_ksum(4, 1, 2);
  CHECK(g->eval(concat({enc1(0), ones(p1.blockbits)})) == 1);
}

TEST_CASE("two-level k-sum composition") {
  CHECK(f_qvsc_arity(2) == 576);
  KSumParams p = KSumParams::make(2, 1);
  REQUIRE(p.blockbits == 12);
  long long level = 2 * p.blockbits;  // 24

  CHECK(f_qvsc_eval(2, zeros(576)) == 0);
  CHECK_THROWS_AS(f_qvsc_eval(2, zeros(100)), std::invalid_argument);

  // outer word: a decoded zero block followed by a dense junk block
  BitString outer = concat({ksum_encode_value(0, p), ones(p.blockbits)});
  std::vector<BitString> chunks;
  for (long long i = 0; i < level; ++i) {
    if (outer.get(static_cast<std::size_t>(i)))
      chunks.push_back(concat({ksum_encode_value(0, p), zeros(p.blockbits)}));
    else
      chunks.push_back(zeros(static_cast<std::size_t>(level)));
  }
  CHECK(f_qvsc_eval(2, concat(chunks)) == 1);
}

TEST_CASE("unambiguous certificate collections") {
  FnPtr or2 = make_named("OR", {2});
  std::vector<Restriction> good = {{{1, 1}}, {{1, 0}, {2, 1}}};
  CHECK(validate_unambiguous(or2, good));
  CHECK(!validate_unambiguous(or2, {{{1, 1}}, {{2, 1}}}));  // input 11 doubly covered
  CHECK(!validate_unambiguous(or2, {{{1, 1}}}));            // input 01 uncovered
  CHECK(!validate_unambiguous(make_named("AND", {2}), good));
  CHECK_THROWS_AS(validate_unambiguous(or2, {{{3, 1}}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_unambiguous(make_named("AND", {17}), {}), std::invalid_argument);
}

TEST_CASE("desensitized evaluation pins one certificate across three copies") {
  FnPtr or2 = make_named("OR", {2});
  std::vector<Restriction> U = {{{1, 1}}, {{1, 0}, {2, 1}}};
  FnPtr d = desensitize(or2, U);
  CHECK(d->arity() == 6);
  CHECK(d->eval(BitString::from_string("010101")) == 1);  // all copies match restriction 2
  CHECK(d->eval(BitString::from_string("111111")) == 1);  // all copies match restriction 1
  CHECK(d->eval(BitString::from_string("011001")) == 0);  // copies disagree
  CHECK(d->eval(BitString::from_string("000101")) == 0);  // first copy rejects
  CHECK_THROWS_AS(desensitize(or2, {{{1, 1}}}), std::invalid_argument);

  FnPtr and2 = make_named("AND", {2});
  FnPtr dand = desensitize(and2, {{{1, 1}, {2, 1}}});
  TruthTable expect = truth_table(make_named("AND", {6}));
  CHECK(truth_table(dand) == expect);
}

TEST_CASE("sensitivity witness composition shape") {
  FnPtr or2 = make_named("OR", {2});
  std::vector<Restriction> U = {{{1, 1}}, {{1, 0}, {2, 1}}};
  FnPtr w = sensitivity_witness(or2, U);
  CHECK(w->arity() == 36);
  CHECK(w->eval(ones(36)) == 1);
  CHECK(w->eval(zeros(36)) == 0);
  BitString x(36);
  for (int i = 0; i < 6; ++i) x.set(i, 1);  // first inner copy accepts, so the OR does
  CHECK(w->eval(x) == 1);
}
