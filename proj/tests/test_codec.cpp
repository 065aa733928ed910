#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "tbf/codec.hpp"

using namespace tbf;

namespace {

SchemeSymbol random_symbol(const EncodingScheme& sc, std::mt19937_64& rng,
                           bool allow_null = true) {
  SchemeSymbol sym;
  sym.value = static_cast<int>(rng() % 2);
  auto comp = [&](bool full) -> std::array<int, 3> {
    std::array<int, 3> a = {0, 0, 0};
    a[0] = static_cast<int>(rng() % sc.n) + 1;
    a[1] = static_cast<int>(rng() % sc.n) + 1;
    if (full) a[2] = static_cast<int>(rng() % sc.n) + 1;
    return a;
  };
  bool three = sc.three_tags();
  if (!allow_null || rng() % 4 != 0) sym.l = comp(three);
  if (!allow_null || rng() % 4 != 0) sym.r = comp(three);
  if (!allow_null || rng() % 4 != 0) {
    if (sc.id == SchemeId::Dec96)
      sym.b = std::array<int, 3>{0, static_cast<int>(rng() % sc.n) + 1, 0};
    else
      sym.b = comp(three);
  }
  return sym;
}

Tag random_tag(const EncodingScheme& sc, std::mt19937_64& rng) {
  if (sc.three_tags()) return static_cast<Tag>(rng() % 3);
  return rng() % 2 == 0 ? Tag::Upright : Tag::Swapped;
}

void scramble(BitString& w, const EncodingScheme& sc, std::mt19937_64& rng, int ops) {
  static const BlockOp kOps[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
  for (int i = 0; i < ops; ++i) {
    if (rng() % 2 == 0)
      apply_part_transposition(w, sc, static_cast<int>(rng() % (sc.parts - 1)) + 1);
    else
      apply_block_op(w, sc, static_cast<int>(rng() % sc.parts) + 1, kOps[rng() % 3]);
  }
}

}  // namespace

TEST_CASE("balanced position codes") {
  CHECK(bb(1, 2).to_string() == "0110");
  CHECK(bb(2, 2).to_string() == "1001");
  CHECK(bb(4, 2).to_string() == "0101");  // residue 0 encodes index n
  for (int logn : {2, 3, 4}) {
    int n = 1 << logn;
    std::set<std::string> seen;
    for (int ell = 1; ell <= n; ++ell) {
      BitString c = bb(ell, logn);
      CHECK(static_cast<int>(c.size()) == 2 * logn);
      CHECK(static_cast<int>(c.weight()) == logn);
      CHECK(bb_decode(c) == ell);
      seen.insert(c.to_string());
    }
    CHECK(static_cast<int>(seen.size()) == n);
  }
  CHECK_THROWS_AS(bb_decode(BitString::from_string("1100")), std::invalid_argument);
}

TEST_CASE("two-part position codes") {
  CHECK(encode_E(EKind::Row, 2, 2).to_string() == "10010000");
  CHECK(encode_E(EKind::Col, 3, 2).to_string() == "00001010");
  for (int logn : {2, 3}) {
    int n = 1 << logn;
    for (int i = 1; i <= n; ++i) {
      for (EKind k : {EKind::Row, EKind::Col}) {
        auto [dk, di] = decode_E(encode_E(k, i, logn));
        CHECK(dk == k);
        CHECK(di == i);
      }
    }
  }
  CHECK_THROWS_AS(decode_E(BitString::from_string("10011001")), std::invalid_argument);
  CHECK_THROWS_AS(decode_E(BitString::from_string("00000000")), std::invalid_argument);
}

TEST_CASE("three-part position codes") {
  int logn = 3;
  for (EKind k : {EKind::Row, EKind::Col, EKind::Brick}) {
    for (int i = 1; i <= 8; ++i) {
      BitString c = encode_E3(k, i, logn);
      CHECK(static_cast<int>(c.size()) == 6 * logn);
      // the occupied third matches the kind
      int third = static_cast<int>(k);
      CHECK(c.weight_range(static_cast<std::size_t>(third) * 2 * logn, 2 * logn) ==
            static_cast<std::size_t>(logn));
      auto [dk, di] = decode_E3(c);
      CHECK(dk == k);
      CHECK(di == i);
    }
  }
  CHECK_THROWS_AS(decode_E3(BitString(18)), std::invalid_argument);
}

TEST_CASE("scheme shapes and standard-form weight tables") {
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16},
                       {SchemeId::Dec240, 8}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    int logn = sc.logn;
    CHECK(sc.cellbits == sc.parts * 4 * sc.blocklen);
    if (id == SchemeId::Dec96) {
      CHECK(sc.parts == 6);
      CHECK(sc.blocklen == 4 * logn);
    } else if (id == SchemeId::Dec112) {
      CHECK(sc.parts == 7);
      CHECK(sc.blocklen == 4 * logn);
    } else {
      CHECK(sc.parts == 10);
      CHECK(sc.blocklen == 6 * logn);
    }
    for (int V : {0, 1}) {
      int p1 = sc.part_total(1, V);
      if (id == SchemeId::Dec240)
        CHECK(p1 == 16 * logn - V);
      else
        CHECK(p1 == 12 * logn + 2 - V);
    }
    for (int p = 2; p <= sc.parts; ++p) CHECK(sc.part_total(p, 0) == 7 * logn + 4 + p);
    CHECK(sc.b3_weight() == 2 * logn + 1);
    CHECK(sc.b4_weight() == 2 * logn + 2);
  }
}

TEST_CASE("standard encoding hits the block weight table") {
  std::mt19937_64 rng(3);
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16},
                       {SchemeId::Dec240, 8}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    for (int trial = 0; trial < 10; ++trial) {
      // the weight ledger describes fully-pointed symbols; a null pointer
      // deliberately leaves its encoding block empty
      SchemeSymbol sym = random_symbol(sc, rng, /*allow_null=*/false);
      BitString w = std_encode_cell(sym, Tag::Upright, sc, trial ? &rng : nullptr);
      REQUIRE(static_cast<int>(w.size()) == sc.cellbits);
      for (int p = 1; p <= sc.parts; ++p) {
        CHECK(static_cast<int>(w.weight_range(sc.part_offset(p), 4 * sc.blocklen)) ==
              sc.part_total(p, sym.value));
        CHECK(static_cast<int>(w.weight_range(sc.block_offset(p, 2), sc.blocklen)) ==
              sc.b2_weight(p));
        CHECK(static_cast<int>(w.weight_range(sc.block_offset(p, 3), sc.blocklen)) ==
              sc.b3_weight());
        CHECK(static_cast<int>(w.weight_range(sc.block_offset(p, 4), sc.blocklen)) ==
              sc.b4_weight());
      }
    }
  }
}

TEST_CASE("decode inverts standard encoding") {
  std::mt19937_64 rng(5);
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16},
                       {SchemeId::Dec240, 8}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    for (int trial = 0; trial < 60; ++trial) {
      SchemeSymbol sym = random_symbol(sc, rng);
      Tag tag = random_tag(sc, rng);
      BitString w = std_encode_cell(sym, tag, sc, &rng);
      DecodedCell d = dec(w, sc);
      REQUIRE(d.valid);
      CHECK(d.sym == sym);
      CHECK(d.tag == tag);
    }
  }
}

TEST_CASE("decode survives legal part and block rearrangements") {
  std::mt19937_64 rng(9);
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16},
                       {SchemeId::Dec240, 8}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    for (int trial = 0; trial < 40; ++trial) {
      SchemeSymbol sym = random_symbol(sc, rng);
      Tag tag = random_tag(sc, rng);
      BitString w = std_encode_cell(sym, tag, sc, &rng);
      scramble(w, sc, rng, 12);
      DecodedCell d = dec(w, sc);
      REQUIRE(d.valid);
      CHECK(d.sym == sym);
      CHECK(d.tag == tag);
    }
  }
}

TEST_CASE("tag transitions under half swaps and third rotations") {
  std::mt19937_64 rng(13);
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    SchemeSymbol sym = random_symbol(sc, rng);
    BitString w = std_encode_cell(sym, Tag::Upright, sc, &rng);
    apply_per_block_push(w, sc, swap_half_push(sc.blocklen));
    DecodedCell d = dec(w, sc);
    REQUIRE(d.valid);
    CHECK(d.sym == sym);
    CHECK(d.tag == Tag::Swapped);
    apply_per_block_push(w, sc, swap_half_push(sc.blocklen));
    CHECK(dec(w, sc).tag == Tag::Upright);
  }
  EncodingScheme sc = EncodingScheme::make(SchemeId::Dec240, 8);
  SchemeSymbol sym = random_symbol(sc, rng);
  BitString w = std_encode_cell(sym, Tag::Upright, sc, &rng);
  const Tag cycle[4] = {Tag::Upright, Tag::Rotated, Tag::Swapped, Tag::Upright};
  for (int step = 1; step <= 3; ++step) {
    apply_per_block_push(w, sc, rot1_push(sc.blocklen));
    DecodedCell d = dec(w, sc);
    REQUIRE(d.valid);
    CHECK(d.sym == sym);
    CHECK(d.tag == cycle[step]);
  }
  apply_per_block_push(w, sc, rot2_push(sc.blocklen));
  CHECK(dec(w, sc).tag == Tag::Swapped);  // rot2 steps the cycle backwards
}

TEST_CASE("push helpers compose as expected") {
  auto apply = [](const std::vector<int>& push, const std::vector<int>& v) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[push[i]] = v[i];
    return out;
  };
  std::vector<int> v(12);
  for (int i = 0; i < 12; ++i) v[i] = i;
  CHECK(apply(rot2_push(12), apply(rot1_push(12), v)) == v);
  CHECK(apply(swap_half_push(12), apply(swap_half_push(12), v)) == v);
  CHECK(apply(flip_push(12), apply(flip_push(12), v)) == v);
  // thirds move as units: (t1,t2,t3) -> (t3,t1,t2)
  std::vector<int> r1 = apply(rot1_push(12), v);
  CHECK(r1[0] == 8);
  CHECK(r1[4] == 0);
  CHECK(r1[8] == 4);
}

TEST_CASE("block group closure") {
  const auto& grp = block_group();
  REQUIRE(grp.size() == 8);
  std::set<std::array<int, 4>> perms;
  for (const auto& g : grp) perms.insert(g.src);
  CHECK(perms.size() == 8);  // flip vector is a function of the permutation
  bool has_id = false, has_sbs = false;
  for (const auto& g : grp) {
    if (g.src == std::array<int, 4>{0, 1, 2, 3} && g.flip == std::array<std::uint8_t, 4>{0, 0, 0, 0})
      has_id = true;
    if (g.src == std::array<int, 4>{2, 3, 0, 1} && g.flip == std::array<std::uint8_t, 4>{0, 0, 0, 0})
      has_sbs = true;
  }
  CHECK(has_id);
  CHECK(has_sbs);
}

TEST_CASE("malformed words decode as invalid, never throw") {
  std::mt19937_64 rng(17);
  for (auto [id, n] : {std::pair{SchemeId::Dec96, 16}, {SchemeId::Dec112, 16},
                       {SchemeId::Dec240, 8}}) {
    EncodingScheme sc = EncodingScheme::make(id, n);
    DecodedCell z = dec(BitString(static_cast<std::size_t>(sc.cellbits)), sc);
    CHECK_FALSE(z.valid);
    CHECK(z.sym == null_symbol());
    CHECK(z.tag == Tag::Upright);
    BitString ones(static_cast<std::size_t>(sc.cellbits));
    for (int i = 0; i < sc.cellbits; ++i) ones.set(i, 1);
    CHECK_FALSE(dec(ones, sc).valid);
    for (int trial = 0; trial < 30; ++trial) {
      SchemeSymbol sym = random_symbol(sc, rng);
      BitString w = std_encode_cell(sym, random_tag(sc, rng), sc, &rng);
      // drown one part in ones; its weight profile then matches no role
      int part = static_cast<int>(rng() % sc.parts) + 1;
      for (int i = 0; i < 4 * sc.blocklen; ++i) w.set(sc.part_offset(part) + i, 1);
      CHECK_FALSE(dec(w, sc).valid);
    }
    for (int trial = 0; trial < 20; ++trial) {
      BitString w(static_cast<std::size_t>(sc.cellbits));
      for (int i = 0; i < sc.cellbits; ++i) w.set(i, static_cast<int>(rng() & 1));
      dec(w, sc);  // must not throw
    }
  }
}

TEST_CASE("null symbol is not the trivial cell content") {
  SchemeSymbol ns = null_symbol();
  CHECK(ns.value == 0);
  CHECK_FALSE(ns.l);
  CHECK_FALSE(ns.r);
  CHECK_FALSE(ns.b);
}
