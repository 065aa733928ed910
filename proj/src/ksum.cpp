#include "tbf/ksum.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tbf {

namespace {

// Klein four-group on slot positions within a gadget.
const int kKlein[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};

void fill_slot(BitString& w, std::size_t begin, int len, int weight, std::mt19937_64* rng) {
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

}  // namespace

KSumParams KSumParams::make(long long b, int k) {
  if (b < 2 || (b & (b - 1)) != 0) throw std::invalid_argument("base must be a power of two");
  if (k < 1) throw std::invalid_argument("sum arity must be positive");
  KSumParams p;
  p.b = b;
  p.k = k;
  p.logb = 0;
  while ((1LL << p.logb) < b) ++p.logb;
  p.gadgets = k * p.logb;
  if (p.gadgets > 62) throw std::invalid_argument("alphabet exceeds 2^62");
  p.slotlen = p.gadgets + 2;
  p.blockbits = p.gadgets * 4 * p.slotlen;
  p.alphabet = 1LL << p.gadgets;
  return p;
}

BitString ksum_encode_value(long long v, const KSumParams& p, std::mt19937_64* rng) {
  if (v < 0 || v >= p.alphabet) throw std::out_of_range("value outside the alphabet");
  std::vector<int> order(p.gadgets);  // order[slot position] = gadget index (0-based)
  std::iota(order.begin(), order.end(), 0);
  if (rng) std::shuffle(order.begin(), order.end(), *rng);
  BitString w(p.blockbits);
  for (int gpos = 0; gpos < p.gadgets; ++gpos) {
    int i = order[gpos];                                   // gadget index, 0-based
    int bit = static_cast<int>((v >> (p.gadgets - 1 - i)) & 1);  // MSB first
    int klein = rng ? static_cast<int>((*rng)() % 4) : 0;
    // standard slot weights before the Klein rearrangement
    int weights[4] = {bit, bit ^ 1, 2, i + 3};  // marker weight i+3 keeps gadgets 1-based and clear of the constant-2 slot
    std::size_t base = static_cast<std::size_t>(gpos) * 4 * p.slotlen;
    for (int s = 0; s < 4; ++s)
      fill_slot(w, base + static_cast<std::size_t>(kKlein[klein][s]) * p.slotlen, p.slotlen,
                weights[s], rng);
  }
  return w;
}

std::optional<long long> ksum_decode_block(const BitString& block, const KSumParams& p) {
  if (block.size() != static_cast<std::size_t>(p.blockbits)) return std::nullopt;
  std::vector<char> seen(p.gadgets, 0);
  long long v = 0;
  for (int gpos = 0; gpos < p.gadgets; ++gpos) {
    std::size_t base = static_cast<std::size_t>(gpos) * 4 * p.slotlen;
    int wt[4];
    for (int s = 0; s < 4; ++s)
      wt[s] = static_cast<int>(block.weight_range(base + s * p.slotlen, p.slotlen));
    // locate the {0,1} pair and the {2,i+2} pair on adjacent slot pairs
    auto is_value_pair = [](int a, int b) { return (a == 0 && b == 1) || (a == 1 && b == 0); };
    int vp;  // 0: value pair in slots (0,1); 1: in slots (2,3)
    if (is_value_pair(wt[0], wt[1])) vp = 0;
    else if (is_value_pair(wt[2], wt[3])) vp = 1;
    else return std::nullopt;
    int w0 = wt[vp ? 2 : 0], w1 = wt[vp ? 3 : 1];  // value pair in slot order
    int u0 = wt[vp ? 0 : 2], u1 = wt[vp ? 1 : 3];  // weight pair in slot order
    bool reversed;
    if (u0 == 2 && u1 >= 3) reversed = false;
    else if (u1 == 2 && u0 >= 3) reversed = true;
    else return std::nullopt;
    int i = (reversed ? u0 : u1) - 3;  // back to 0-based gadget index
    if (i < 0 || i >= p.gadgets || seen[i]) return std::nullopt;
    seen[i] = 1;
    int bit = (w0 == 1) ^ reversed;
    if (bit) v |= 1LL << (p.gadgets - 1 - i);
  }
  return v;
}

}  // namespace tbf
