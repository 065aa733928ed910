#include "tbf/codec.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tbf {

namespace {

int exact_log2(int n) {
  if (n <= 0 || (n & (n - 1)) != 0) throw std::invalid_argument("n must be a power of two");
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

// Writes `weight` ones into w[begin, begin+len): lowest positions when rng is
// null, a uniform random subset otherwise.
void fill_weight(BitString& w, std::size_t begin, int len, int weight, std::mt19937_64* rng) {
  if (weight < 0 || weight > len) throw std::logic_error("filler weight out of range");
  if (!rng) {
    for (int i = 0; i < weight; ++i) w.set(begin + i, 1);
    return;
  }
  std::vector<int> pos(len);
  std::iota(pos.begin(), pos.end(), 0);
  for (int i = 0; i < weight; ++i) {
    std::uniform_int_distribution<int> d(i, len - 1);
    std::swap(pos[i], pos[d(*rng)]);
    w.set(begin + pos[i], 1);
  }
}

void permute_block(BitString& w, std::size_t begin, const std::vector<int>& push) {
  int len = static_cast<int>(push.size());
  BitString tmp(len);
  for (int i = 0; i < len; ++i) tmp.set(push[i], w.get(begin + i));
  for (int i = 0; i < len; ++i) w.set(begin + i, tmp.get(i));
}

// Expected block-weight quadruple (roles B1..B4) of one standard-form part.
struct PartProfile {
  int part = 0;
  int value = 0;   // part 1 only
  bool bot = false;  // pointer parts: all-zero encoding block
  std::array<int, 4> role_weight{};
};

std::vector<PartProfile> part_profiles(const EncodingScheme& sc) {
  std::vector<PartProfile> out;
  for (int v = 0; v <= 1; ++v)
    out.push_back({1, v, false,
                   {sc.value_b1_weight(v), sc.b2_weight(1), sc.b3_weight(), sc.b4_weight()}});
  for (int p = 2; p <= sc.parts; ++p) {
    out.push_back({p, 0, false, {sc.logn, sc.b2_weight(p), sc.b3_weight(), sc.b4_weight()}});
    out.push_back({p, 0, true, {0, sc.b2_weight(p), sc.b3_weight(), sc.b4_weight()}});
  }
  return out;
}

std::array<int, 4> sorted4(std::array<int, 4> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

// --- balanced binary position codes -----------------------------------------

BitString bb(long long ell, int logn) {
  long long n = 1LL << logn;
  if (ell < 1 || ell > n) throw std::invalid_argument("bb: index out of range");
  long long v = ell % n;
  BitString out(2 * static_cast<std::size_t>(logn));
  for (int d = 0; d < logn; ++d) {
    int bit = static_cast<int>((v >> (logn - 1 - d)) & 1);
    out.set(2 * d, bit);
    out.set(2 * d + 1, bit ^ 1);
  }
  return out;
}

int bb_decode(const BitString& code) {
  if (code.size() % 2 != 0) throw std::invalid_argument("bb_decode: odd length");
  int logn = static_cast<int>(code.size() / 2);
  long long v = 0;
  for (int d = 0; d < logn; ++d) {
    int a = code.get(2 * d), b = code.get(2 * d + 1);
    if (a == b) throw std::invalid_argument("bb_decode: illegal digit pair");
    v = (v << 1) | a;
  }
  return v == 0 ? (1 << logn) : static_cast<int>(v);
}

BitString encode_E(EKind kind, int i, int logn) {
  if (kind == EKind::Brick) throw std::invalid_argument("encode_E: no brick component");
  BitString out(4 * static_cast<std::size_t>(logn));
  out.assign_range(kind == EKind::Row ? 0 : 2 * static_cast<std::size_t>(logn), bb(i, logn));
  return out;
}

std::pair<EKind, int> decode_E(const BitString& code) {
  if (code.size() % 4 != 0) throw std::invalid_argument("decode_E: bad length");
  std::size_t half = code.size() / 2;
  bool z0 = code.all_zero_range(0, half), z1 = code.all_zero_range(half, half);
  if (z0 == z1) throw std::invalid_argument("decode_E: exactly one half must be all-zero");
  if (z1) return {EKind::Row, bb_decode(code.slice(0, half))};
  return {EKind::Col, bb_decode(code.slice(half, half))};
}

BitString encode_E3(EKind kind, int i, int logn) {
  BitString out(6 * static_cast<std::size_t>(logn));
  out.assign_range(static_cast<std::size_t>(static_cast<int>(kind)) * 2 * logn, bb(i, logn));
  return out;
}

std::pair<EKind, int> decode_E3(const BitString& code) {
  if (code.size() % 6 != 0) throw std::invalid_argument("decode_E3: bad length");
  std::size_t third = code.size() / 3;
  int hot = -1;
  for (int t = 0; t < 3; ++t)
    if (!code.all_zero_range(t * third, third)) {
      if (hot >= 0) throw std::invalid_argument("decode_E3: two live thirds");
      hot = t;
    }
  if (hot < 0) throw std::invalid_argument("decode_E3: all-zero");
  return {static_cast<EKind>(hot), bb_decode(code.slice(hot * third, third))};
}

// --- schemes -----------------------------------------------------------------

char tag_char(Tag t) {
  switch (t) {
    case Tag::Upright: return '>';
    case Tag::Rotated: return '^';
    case Tag::Swapped: return '<';
  }
  throw std::logic_error("bad tag");
}

Tag tag_from_char(char c) {
  switch (c) {
    case '>': return Tag::Upright;
    case '^': return Tag::Rotated;
    case '<': return Tag::Swapped;
  }
  throw std::invalid_argument("bad tag character");
}

int EncodingScheme::pointer_components(int ptr) const {
  if (id == SchemeId::Dec240) return 3;
  if (id == SchemeId::Dec96 && ptr == 2) return 1;
  return 2;
}

int EncodingScheme::value_b1_weight(int V) const {
  return id == SchemeId::Dec240 ? 6 * logn - 3 - V : 4 * logn - 1 - V;
}

int EncodingScheme::b2_weight(int part) const {
  return part == 1 ? blocklen : 2 * logn + 1 + part;
}

int EncodingScheme::part_total(int part, int V) const {
  if (part == 1) return id == SchemeId::Dec240 ? 16 * logn - V : 12 * logn + 2 - V;
  return 7 * logn + 4 + part;
}

EncodingScheme EncodingScheme::make(SchemeId id, int n) {
  EncodingScheme sc;
  sc.id = id;
  sc.n = n;
  sc.logn = exact_log2(n);
  int minimum = (id == SchemeId::Dec240) ? 8 : 16;
  if (n < minimum) throw std::invalid_argument("matrix side too small for this scheme");
  switch (id) {
    case SchemeId::Dec96:
      sc.parts = 6;
      sc.fields = {{0, EKind::Row}, {0, EKind::Col}, {1, EKind::Row}, {1, EKind::Col},
                   {2, EKind::Col}};
      break;
    case SchemeId::Dec112:
      sc.parts = 7;
      sc.fields = {{0, EKind::Row}, {0, EKind::Col}, {1, EKind::Row}, {1, EKind::Col},
                   {2, EKind::Row}, {2, EKind::Col}};
      break;
    case SchemeId::Dec240:
      sc.parts = 10;
      sc.fields = {{0, EKind::Row}, {0, EKind::Col}, {0, EKind::Brick},
                   {1, EKind::Row}, {1, EKind::Col}, {1, EKind::Brick},
                   {2, EKind::Row}, {2, EKind::Col}, {2, EKind::Brick}};
      break;
  }
  sc.blocklen = (id == SchemeId::Dec240 ? 6 : 4) * sc.logn;
  sc.cellbits = sc.parts * 4 * sc.blocklen;

  // Decodability gates: sorted block-weight profiles pairwise distinct across
  // all part variants, and role weights distinct within every variant.
  std::set<std::array<int, 4>> seen;
  for (const auto& pp : part_profiles(sc)) {
    std::array<int, 4> key = sorted4(pp.role_weight);
    for (int i = 0; i < 3; ++i)
      if (key[i] == key[i + 1]) throw std::logic_error("block weights collide within a part");
    if (!seen.insert(key).second) throw std::logic_error("part weight profiles collide");
    for (int w : pp.role_weight)
      if (w > sc.blocklen) throw std::logic_error("block weight exceeds block length");
  }
  return sc;
}

SchemeSymbol null_symbol() { return SchemeSymbol{}; }

// --- encoding ----------------------------------------------------------------

BitString std_encode_cell(const SchemeSymbol& sym, Tag tag, const EncodingScheme& sc,
                          std::mt19937_64* rng) {
  if (sym.value != 0 && sym.value != 1) throw std::out_of_range("cell value must be 0 or 1");
  if (tag == Tag::Rotated && !sc.three_tags())
    throw std::invalid_argument("rotated tag needs a three-tag scheme");

  // Components referenced by some part must lie in [1, n]; the rest must be 0.
  std::array<const std::optional<std::array<int, 3>>*, 3> ptrs = {&sym.l, &sym.r, &sym.b};
  std::array<std::array<bool, 3>, 3> used{};
  for (const auto& f : sc.fields) used[f.ptr][static_cast<int>(f.kind)] = true;
  for (int p = 0; p < 3; ++p) {
    if (!ptrs[p]->has_value()) continue;
    for (int k = 0; k < 3; ++k) {
      int v = (**ptrs[p])[k];
      if (used[p][k] ? (v < 1 || v > sc.n) : (v != 0))
        throw std::out_of_range("pointer component out of range");
    }
  }

  BitString w(sc.cellbits);
  int two = 2 * sc.logn;
  // Part 1: encoding block l1.l2(.l3), then weight-only blocks.
  {
    std::size_t b1 = sc.block_offset(1, 1);
    fill_weight(w, b1, two, two, nullptr);  // l1 is all-ones
    if (sc.three_tags()) {
      fill_weight(w, b1 + two, two, two - 1, rng);
      fill_weight(w, b1 + 2 * two, two, two - 2 - sym.value, rng);
    } else {
      fill_weight(w, b1 + two, two, two - 1 - sym.value, rng);
    }
    fill_weight(w, sc.block_offset(1, 2), sc.blocklen, sc.b2_weight(1), rng);
    fill_weight(w, sc.block_offset(1, 3), sc.blocklen, sc.b3_weight(), rng);
    fill_weight(w, sc.block_offset(1, 4), sc.blocklen, sc.b4_weight(), rng);
  }
  // Pointer parts.
  for (int p = 2; p <= sc.parts; ++p) {
    const auto& f = sc.fields[p - 2];
    if (ptrs[f.ptr]->has_value()) {
      int v = (**ptrs[f.ptr])[static_cast<int>(f.kind)];
      BitString code = sc.three_tags() ? encode_E3(f.kind, v, sc.logn)
                                       : encode_E(f.kind, v, sc.logn);
      w.assign_range(sc.block_offset(p, 1), code);
    }
    fill_weight(w, sc.block_offset(p, 2), sc.blocklen, sc.b2_weight(p), rng);
    fill_weight(w, sc.block_offset(p, 3), sc.blocklen, sc.b3_weight(), rng);
    fill_weight(w, sc.block_offset(p, 4), sc.blocklen, sc.b4_weight(), rng);
  }

  if (tag != Tag::Upright) {
    std::vector<int> push;
    if (!sc.three_tags()) push = swap_half_push(sc.blocklen);
    else if (tag == Tag::Rotated) push = rot1_push(sc.blocklen);
    else push = rot2_push(sc.blocklen);
    apply_per_block_push(w, sc, push);
  }
  return w;
}

// --- decoding ----------------------------------------------------------------

DecodedCell dec(const BitString& word, const EncodingScheme& sc) {
  DecodedCell bad;  // valid=false, null symbol, upright tag
  if (word.size() != static_cast<std::size_t>(sc.cellbits)) return bad;

  std::map<std::array<int, 4>, PartProfile> by_profile;
  for (const auto& pp : part_profiles(sc)) by_profile[sorted4(pp.role_weight)] = pp;

  // 1. classify every raw part slot by its sorted block-weight profile
  std::vector<PartProfile> prof(sc.parts);
  std::vector<int> slot_of_part(sc.parts + 1, -1);
  for (int s = 0; s < sc.parts; ++s) {
    std::array<int, 4> wts{};
    for (int bslot = 0; bslot < 4; ++bslot)
      wts[bslot] = static_cast<int>(
          word.weight_range(sc.block_offset(s + 1, bslot + 1), sc.blocklen));
    auto it = by_profile.find(sorted4(wts));
    if (it == by_profile.end()) return bad;
    prof[s] = it->second;
    if (slot_of_part[prof[s].part] >= 0) return bad;
    slot_of_part[prof[s].part] = s;
  }

  // 2. per part: identify block roles by weight, undo the block-group element
  std::vector<std::array<BitString, 4>> blocks(sc.parts + 1);  // [part][role]
  for (int s = 0; s < sc.parts; ++s) {
    BlockArrangement arr{};
    for (int bslot = 0; bslot < 4; ++bslot) {
      int wt = static_cast<int>(
          word.weight_range(sc.block_offset(s + 1, bslot + 1), sc.blocklen));
      int role = -1;
      for (int r = 0; r < 4; ++r)
        if (prof[s].role_weight[r] == wt) role = r;
      if (role < 0) return bad;
      arr.src[bslot] = role;
    }
    const BlockArrangement* elem = nullptr;
    for (const auto& g : block_group())
      if (g.src == arr.src) elem = &g;
    if (!elem) return bad;
    for (int bslot = 0; bslot < 4; ++bslot) {
      BitString content = word.slice(sc.block_offset(s + 1, bslot + 1), sc.blocklen);
      if (elem->flip[bslot]) {
        BitString tmp = content;
        permute_block(tmp, 0, flip_push(sc.blocklen));
        content = tmp;
      }
      blocks[prof[s].part][elem->src[bslot]] = content;
    }
  }

  // 3. tag from the shape of the value part's encoding block
  int V = prof[slot_of_part[1]].value;
  int two = 2 * sc.logn;
  const BitString& vb = blocks[1][0];
  Tag tag;
  if (!sc.three_tags()) {
    bool f0 = vb.all_ones_range(0, two), f1 = vb.all_ones_range(two, two);
    if (f0 == f1) return bad;
    tag = f0 ? Tag::Upright : Tag::Swapped;
  } else {
    int hot = -1;
    for (int t = 0; t < 3; ++t)
      if (vb.all_ones_range(t * two, two)) {
        if (hot >= 0) return bad;
        hot = t;
      }
    if (hot < 0) return bad;
    tag = hot == 0 ? Tag::Upright : (hot == 1 ? Tag::Rotated : Tag::Swapped);
    if (vb.weight_range(((hot + 1) % 3) * two, two) != static_cast<std::size_t>(two - 1))
      return bad;
  }

  // 4. undo the tag transform on every block
  if (tag != Tag::Upright) {
    std::vector<int> undo;
    if (!sc.three_tags()) undo = swap_half_push(sc.blocklen);
    else if (tag == Tag::Rotated) undo = rot2_push(sc.blocklen);
    else undo = rot1_push(sc.blocklen);
    for (int p = 1; p <= sc.parts; ++p)
      for (int r = 0; r < 4; ++r) permute_block(blocks[p][r], 0, undo);
  }

  // 5. strict standard-form validation and pointer extraction
  std::array<std::array<int, 3>, 3> comp{};
  std::array<int, 3> present{};  // per pointer: count of live components
  std::array<int, 3> absent{};
  for (int p = 2; p <= sc.parts; ++p) {
    const auto& f = sc.fields[p - 2];
    if (prof[slot_of_part[p]].bot) {
      ++absent[f.ptr];
      continue;
    }
    try {
      auto [kind, v] = sc.three_tags() ? decode_E3(blocks[p][0]) : decode_E(blocks[p][0]);
      if (kind != f.kind) return bad;
      comp[f.ptr][static_cast<int>(f.kind)] = v;
      ++present[f.ptr];
    } catch (const std::invalid_argument&) {
      return bad;
    }
  }

  DecodedCell out;
  out.valid = true;
  out.tag = tag;
  out.sym.value = V;
  std::array<std::optional<std::array<int, 3>>*, 3> dst = {&out.sym.l, &out.sym.r, &out.sym.b};
  for (int ptr = 0; ptr < 3; ++ptr) {
    if (present[ptr] > 0 && absent[ptr] > 0) return bad;  // half-written pointer
    if (present[ptr] > 0) *dst[ptr] = comp[ptr];
  }
  return out;
}

// --- rearrangements ----------------------------------------------------------

void apply_part_transposition(BitString& w, const EncodingScheme& sc, int p) {
  if (p < 1 || p >= sc.parts) throw std::out_of_range("part transposition out of range");
  std::size_t len = 4 * static_cast<std::size_t>(sc.blocklen);
  BitString a = w.slice(sc.part_offset(p), len);
  BitString b = w.slice(sc.part_offset(p + 1), len);
  w.assign_range(sc.part_offset(p), b);
  w.assign_range(sc.part_offset(p + 1), a);
}

void apply_block_op(BitString& w, const EncodingScheme& sc, int part, BlockOp op) {
  static const std::array<int, 4> kSrc[3] = {{2, 3, 0, 1}, {1, 0, 2, 3}, {0, 1, 3, 2}};
  static const std::array<int, 4> kFlip[3] = {{0, 0, 0, 0}, {0, 0, 1, 1}, {1, 1, 0, 0}};
  int o = static_cast<int>(op);
  std::array<BitString, 4> cur;
  for (int s = 0; s < 4; ++s) cur[s] = w.slice(sc.block_offset(part, s + 1), sc.blocklen);
  std::vector<int> fp = flip_push(sc.blocklen);
  for (int s = 0; s < 4; ++s) {
    BitString nb = cur[kSrc[o][s]];
    if (kFlip[o][s]) permute_block(nb, 0, fp);
    w.assign_range(sc.block_offset(part, s + 1), nb);
  }
}

void apply_per_block_push(BitString& w, const EncodingScheme& sc, const std::vector<int>& push) {
  if (static_cast<int>(push.size()) != sc.blocklen)
    throw std::invalid_argument("push length must equal the block length");
  for (int p = 1; p <= sc.parts; ++p)
    for (int s = 1; s <= 4; ++s) permute_block(w, sc.block_offset(p, s), push);
}

std::vector<int> flip_push(int blocklen) {
  std::vector<int> push(blocklen);
  for (int i = 0; i < blocklen; ++i) push[i] = i ^ 1;
  return push;
}

std::vector<int> swap_half_push(int blocklen) {
  std::vector<int> push(blocklen);
  for (int i = 0; i < blocklen; ++i) push[i] = (i + blocklen / 2) % blocklen;
  return push;
}

std::vector<int> rot1_push(int blocklen) {
  int t = blocklen / 3;
  std::vector<int> push(blocklen);
  for (int i = 0; i < blocklen; ++i) push[i] = (i / t + 1) % 3 * t + i % t;
  return push;
}

std::vector<int> rot2_push(int blocklen) {
  int t = blocklen / 3;
  std::vector<int> push(blocklen);
  for (int i = 0; i < blocklen; ++i) push[i] = (i / t + 2) % 3 * t + i % t;
  return push;
}

const std::vector<BlockArrangement>& block_group() {
  static const std::vector<BlockArrangement> group = [] {
    BlockArrangement id{{0, 1, 2, 3}, {0, 0, 0, 0}};
    const std::array<int, 4> gen_src[2] = {{2, 3, 0, 1}, {1, 0, 2, 3}};
    const std::array<std::uint8_t, 4> gen_flip[2] = {{0, 0, 0, 0}, {0, 0, 1, 1}};
    std::vector<BlockArrangement> out{id};
    for (std::size_t i = 0; i < out.size(); ++i) {
      BlockArrangement cur = out[i];
      for (int g = 0; g < 2; ++g) {
        BlockArrangement nxt{};
        for (int s = 0; s < 4; ++s) {
          nxt.src[s] = cur.src[gen_src[g][s]];
          nxt.flip[s] = cur.flip[gen_src[g][s]] ^ gen_flip[g][s];
        }
        if (std::find(out.begin(), out.end(), nxt) == out.end()) out.push_back(nxt);
      }
    }
    if (out.size() != 8) throw std::logic_error("block group closure must have 8 elements");
    std::set<std::array<int, 4>> srcs;
    for (const auto& g : out) srcs.insert(g.src);
    if (srcs.size() != 8) throw std::logic_error("block arrangement sources must be distinct");
    return out;
  }();
  return group;
}

}  // namespace tbf
