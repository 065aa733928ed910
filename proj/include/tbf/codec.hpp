// Balanced-pointer cell codecs.
//
// A cell codeword is split into parts, each part into four equal blocks.
// Part 1 carries the cell value, the remaining parts carry one coordinate
// component each of the L/R/B pointers as balanced position codes. Within a
// part the block roles are recoverable purely from block weights; the legal
// rearrangements are the part permutations, the eight-element block group
// generated by SBS and BF, and the per-block tag transforms.
//
// Schemes:
//   Dec96  - 6 parts x 4 blocks of 4logn, pointers (row,col),(row,col),(col)
//   Dec112 - 7 parts, B pointer gets (row,col)
//   Dec240 - 10 parts x 4 blocks of 6logn, three (row,col,brick) pointers
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tbf/bitstring.hpp"

namespace tbf {

// --- balanced binary position codes -----------------------------------------

// bb(ell, logn): binary of (ell mod 2^logn), most significant digit first,
// each digit spread as 1->10, 0->01. Weight is exactly logn.
BitString bb(long long ell, int logn);
// Inverse on [1, 2^logn]; residue 0 decodes as index n. Throws
// std::invalid_argument on any pair outside {10,01}.
int bb_decode(const BitString& code);

enum class EKind { Row = 0, Col = 1, Brick = 2 };

// Two-part code, 4logn bits: row i -> bb(i).0^2logn, col j -> 0^2logn.bb(j).
BitString encode_E(EKind kind, int i, int logn);
std::pair<EKind, int> decode_E(const BitString& code);  // throws if malformed

// Three-part code, 6logn bits: bb(i) sits in the third selected by the kind.
BitString encode_E3(EKind kind, int i, int logn);
std::pair<EKind, int> decode_E3(const BitString& code);  // throws if malformed

// --- schemes -----------------------------------------------------------------

enum class SchemeId { Dec96, Dec112, Dec240 };

enum class Tag : std::uint8_t { Upright = 0, Rotated = 1, Swapped = 2 };
// Serialization characters: Upright '>', Rotated '^', Swapped '<'.
char tag_char(Tag t);
Tag tag_from_char(char c);

struct EncodingScheme {
  SchemeId id;
  int n = 0;        // matrix side, power of two
  int logn = 0;
  int parts = 0;    // 6 / 7 / 10
  int blocklen = 0; // 4logn / 4logn / 6logn
  int cellbits = 0; // parts * 4 * blocklen

  struct Field {        // pointer component carried by part p >= 2
    int ptr;            // 0 = L, 1 = R, 2 = B
    EKind kind;
  };
  std::vector<Field> fields;  // fields[p-2] describes part p

  static EncodingScheme make(SchemeId id, int n);

  bool three_tags() const { return id == SchemeId::Dec240; }
  int pointer_components(int ptr) const;
  int part_offset(int part) const { return (part - 1) * 4 * blocklen; }
  int block_offset(int part, int slot) const { return part_offset(part) + (slot - 1) * blocklen; }

  // Standard-form block weights.
  int value_b1_weight(int V) const;
  int b2_weight(int part) const;  // part >= 2: 2logn+1+part; part 1: blocklen
  int b3_weight() const { return 2 * logn + 1; }
  int b4_weight() const { return 2 * logn + 2; }
  int part_total(int part, int V) const;
};

// Cell symbol at the codec level. Pointer components are 1-based matrix
// coordinates; unused components stay 0 (Dec96 B pointer is a bare column).
struct SchemeSymbol {
  int value = 0;
  std::optional<std::array<int, 3>> l, r, b;  // {row, col, brick}

  bool operator==(const SchemeSymbol& o) const {
    return value == o.value && l == o.l && r == o.r && b == o.b;
  }
};

SchemeSymbol null_symbol();  // (0, null, null, null)

struct DecodedCell {
  bool valid = false;
  SchemeSymbol sym;        // null_symbol() when invalid
  Tag tag = Tag::Upright;  // Upright when invalid
};

// Standard-form encoder. Filler blocks take the lowest positions when rng is
// null, a uniformly random subset otherwise. Throws on out-of-range symbols.
BitString std_encode_cell(const SchemeSymbol& sym, Tag tag, const EncodingScheme& sc,
                          std::mt19937_64* rng = nullptr);

// Total decoder: never throws on content, returns valid=false instead.
DecodedCell dec(const BitString& word, const EncodingScheme& sc);

// --- legal rearrangements of one cell word ----------------------------------

enum class BlockOp { SBS, BF1, BF2 };

void apply_part_transposition(BitString& w, const EncodingScheme& sc, int p);  // p, p+1
void apply_block_op(BitString& w, const EncodingScheme& sc, int part, BlockOp op);
// Applies a push permutation of [blocklen] to every block of every part.
void apply_per_block_push(BitString& w, const EncodingScheme& sc, const std::vector<int>& push);

// Block content transforms (length must be the scheme's blocklen).
std::vector<int> flip_push(int blocklen);        // (1 2)(3 4)...
std::vector<int> swap_half_push(int blocklen);   // halves exchanged
std::vector<int> rot1_push(int blocklen);        // thirds (t1,t2,t3)->(t3,t1,t2)
std::vector<int> rot2_push(int blocklen);        // thirds (t1,t2,t3)->(t2,t3,t1)

// The closure of {SBS, BF1} as arrangements of block contents in slots:
// slot s holds block src[s], flipped iff flip[s]. Exactly 8 elements, and the
// flip vector is distinct for each src permutation.
struct BlockArrangement {
  std::array<int, 4> src;
  std::array<std::uint8_t, 4> flip;
  bool operator==(const BlockArrangement& o) const { return src == o.src && flip == o.flip; }
};
const std::vector<BlockArrangement>& block_group();

}  // namespace tbf
