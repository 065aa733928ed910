// Dynamic bit vector with 0/1 byte storage plus the text/hex/packed encodings
// used across the toolkit. Index 0 is the first (leftmost) position; hex output
// is most-significant-nibble-first; packed bytes are LSB-first within a byte.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tbf {

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : b_(n, 0) {}

  static BitString from_string(std::string_view s);
  static BitString from_hex(std::string_view hex, std::size_t nbits);
  static BitString from_packed(const std::vector<std::uint8_t>& bytes, std::size_t nbits);

  std::size_t size() const { return b_.size(); }
  int get(std::size_t i) const { return b_[i]; }
  void set(std::size_t i, int v) { b_[i] = static_cast<std::uint8_t>(v != 0); }
  void flip(std::size_t i) { b_[i] ^= 1; }

  const std::uint8_t* data() const { return b_.data(); }
  std::uint8_t* data() { return b_.data(); }

  std::size_t weight() const;
  std::size_t weight_range(std::size_t begin, std::size_t len) const;
  bool all_ones_range(std::size_t begin, std::size_t len) const;
  bool all_zero_range(std::size_t begin, std::size_t len) const;
  BitString slice(std::size_t begin, std::size_t len) const;
  void assign_range(std::size_t begin, const BitString& src);

  std::string to_string() const;
  std::string to_hex() const;
  std::vector<std::uint8_t> to_packed() const;

  bool operator==(const BitString& o) const { return b_ == o.b_; }
  bool operator!=(const BitString& o) const { return b_ != o.b_; }

 private:
  std::vector<std::uint8_t> b_;
};

}  // namespace tbf
