#include "tbf/bitstring.hpp"

#include <stdexcept>

namespace tbf {

BitString BitString::from_string(std::string_view s) {
  BitString out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      out.b_[i] = 1;
    else if (s[i] != '0')
      throw std::invalid_argument("bit string must contain only 0/1");
  }
  return out;
}

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("bad hex digit");
}

BitString BitString::from_hex(std::string_view hex, std::size_t nbits) {
  if (hex.size() != (nbits + 3) / 4) throw std::invalid_argument("hex length mismatch");
  BitString out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    int v = hex_val(hex[i / 4]);
    out.b_[i] = static_cast<std::uint8_t>((v >> (3 - i % 4)) & 1);
  }
  // padding bits of the final nibble must be zero
  for (std::size_t i = nbits; i < hex.size() * 4; ++i) {
    int v = hex_val(hex[i / 4]);
    if ((v >> (3 - i % 4)) & 1) throw std::invalid_argument("nonzero hex padding");
  }
  return out;
}

BitString BitString::from_packed(const std::vector<std::uint8_t>& bytes, std::size_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) throw std::invalid_argument("packed length mismatch");
  BitString out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) out.b_[i] = (bytes[i / 8] >> (i % 8)) & 1;
  return out;
}

std::size_t BitString::weight() const { return weight_range(0, b_.size()); }

std::size_t BitString::weight_range(std::size_t begin, std::size_t len) const {
  std::size_t w = 0;
  for (std::size_t i = begin; i < begin + len; ++i) w += b_[i];
  return w;
}

bool BitString::all_ones_range(std::size_t begin, std::size_t len) const {
  for (std::size_t i = begin; i < begin + len; ++i)
    if (!b_[i]) return false;
  return true;
}

bool BitString::all_zero_range(std::size_t begin, std::size_t len) const {
  for (std::size_t i = begin; i < begin + len; ++i)
    if (b_[i]) return false;
  return true;
}

BitString BitString::slice(std::size_t begin, std::size_t len) const {
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i) out.b_[i] = b_[begin + i];
  return out;
}

void BitString::assign_range(std::size_t begin, const BitString& src) {
  for (std::size_t i = 0; i < src.size(); ++i) b_[begin + i] = src.b_[i];
}

std::string BitString::to_string() const {
  std::string s(b_.size(), '0');
  for (std::size_t i = 0; i < b_.size(); ++i)
    if (b_[i]) s[i] = '1';
  return s;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s((b_.size() + 3) / 4, '0');
  for (std::size_t i = 0; i < b_.size(); ++i)
    if (b_[i]) {
      std::size_t d = i / 4;
      s[d] = digits[hex_val(s[d]) | (1 << (3 - i % 4))];
    }
  return s;
}

std::vector<std::uint8_t> BitString::to_packed() const {
  std::vector<std::uint8_t> bytes((b_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < b_.size(); ++i)
    if (b_[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
  return bytes;
}

}  // namespace tbf
