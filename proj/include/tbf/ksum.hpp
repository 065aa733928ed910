// Slot-gadget encoding for k-sum style functions. A symbol over [b^k] is the
// k*log2(b) bit binary string x_1..x_g (MSB first); bit i becomes one gadget
// of four slots of g+2 bits with weights (1,0,2,i+2) for a one and
// (0,1,2,i+2) for a zero. Legal rearrangements: the Klein four-group
// {id,(12)(34),(13)(24),(14)(23)} inside each gadget plus any reordering of
// whole gadgets. Slot validity is weight-only.
#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "tbf/bitstring.hpp"

namespace tbf {

struct KSumParams {
  long long b = 0;       // alphabet base, power of two
  int k = 0;
  int logb = 0;
  int gadgets = 0;       // k * logb
  int slotlen = 0;       // gadgets + 2
  int blockbits = 0;     // gadgets * 4 * slotlen
  long long alphabet = 0;  // b^k

  static KSumParams make(long long b, int k);
};

// Encodes v in [0, b^k). Filler positions lowest-first, or random with rng;
// with rng the gadget order and Klein elements are also randomized.
BitString ksum_encode_value(long long v, const KSumParams& p, std::mt19937_64* rng = nullptr);

// Total: nullopt iff the block is not a legal encoding of any value.
std::optional<long long> ksum_decode_block(const BitString& block, const KSumParams& p);

}  // namespace tbf
