// Explicit truth table of a Boolean function. Row index packs the input with
// variable 1 in the least significant bit.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tbf/bitstring.hpp"

namespace tbf {

struct TruthTable {
  int arity = 0;
  std::vector<std::uint8_t> rows;  // size 1<<arity, values 0/1

  int eval_mask(std::uint32_t mask) const { return rows[mask]; }
  int eval(const BitString& x) const;

  std::string serialize() const;                 // "arity=<k>\n<2^k chars>\n"
  static TruthTable parse(std::string_view text);

  bool operator==(const TruthTable& o) const { return arity == o.arity && rows == o.rows; }
};

}  // namespace tbf
