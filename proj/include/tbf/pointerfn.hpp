// Pointer matrices and the tree-walk query functions on them.
//
// A cell holds a bit and three optional pointers. In a column-pointer matrix
// the B pointer is a column index; in a cell-pointer matrix it is a cell
// coordinate. A column is marked when exactly one of its cells differs from
// the trivial (1, null, null, null); that cell is the column's special
// element. Walks start at a special element and follow L/R pointers along the
// root-to-leaf path of the balanced tree over the columns.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tbf/codec.hpp"

namespace tbf {

using Coord = std::pair<int, int>;  // (row, col), 1-based

enum class MatrixType { ColPtr, CellPtr };

struct Cell {
  int value = 1;
  std::optional<Coord> l, r;
  std::optional<int> bcol;     // ColPtr matrices
  std::optional<Coord> bcell;  // CellPtr matrices

  bool trivial() const { return value == 1 && !l && !r && !bcol && !bcell; }
  bool operator==(const Cell& o) const {
    return value == o.value && l == o.l && r == o.r && bcol == o.bcol && bcell == o.bcell;
  }
};

struct PointerMatrix {
  MatrixType type = MatrixType::ColPtr;
  int m = 0, n = 0;  // rows, cols
  std::vector<Cell> cells;

  PointerMatrix() = default;
  PointerMatrix(MatrixType t, int rows, int cols)
      : type(t), m(rows), n(cols), cells(static_cast<std::size_t>(rows) * cols) {}
  Cell& at(int r, int c) { return cells[static_cast<std::size_t>(r - 1) * n + (c - 1)]; }
  const Cell& at(int r, int c) const { return cells[static_cast<std::size_t>(r - 1) * n + (c - 1)]; }
  bool has_brick_view() const { return n == m * m; }
};

struct TagGrid {
  int m = 0, n = 0;
  std::vector<Tag> t;

  TagGrid() = default;
  TagGrid(int rows, int cols) : m(rows), n(cols), t(static_cast<std::size_t>(rows) * cols, Tag::Upright) {}
  Tag& at(int r, int c) { return t[static_cast<std::size_t>(r - 1) * n + (c - 1)]; }
  Tag at(int r, int c) const { return t[static_cast<std::size_t>(r - 1) * n + (c - 1)]; }
};

// Left/right decisions of the root-to-leaf path to leaf j in the balanced
// binary tree whose ncols leaves are labeled left to right; 0 = left.
// ncols must be a power of two.
std::vector<std::uint8_t> path_sequence(int j, int ncols);

// Columns with exactly one nontrivial cell, as (col, special row), ascending.
std::vector<Coord> find_marked_columns(const PointerMatrix& M);

struct EvalResult {
  int value = 0;
  std::vector<Coord> cert;  // meaningful when value == 1: marked columns + walk cells
};

EvalResult a1_eval(const PointerMatrix& M);            // ColPtr
EvalResult a2_eval(const PointerMatrix& M);            // CellPtr, even column count
EvalResult a3_eval(const PointerMatrix& M, int k);     // CellPtr, k marked columns

// Coordinate remaps; cell contents are not touched.
PointerMatrix transpose(const PointerMatrix& M);
TagGrid transpose(const TagGrid& C);

enum class BrickRot { Top, Swapped };  // new[x,y,z] = old[y,z,x] / old[z,x,y]
PointerMatrix brick_rot(const PointerMatrix& M, BrickRot rot);
TagGrid brick_rot(const TagGrid& C, BrickRot rot);

// Row/column relabeling with pointer update (contents rewritten to follow).
PointerMatrix permute_matrix(const PointerMatrix& M, const std::vector<int>& sigma_row,
                             const std::vector<int>& sigma_col);

struct ModResult {
  int value = 0;
  std::array<bool, 3> branch = {false, false, false};  // upright, rotated, swapped
};

ModResult mod_a1_eval(const PointerMatrix& B, const TagGrid& C);
ModResult mod_a2_eval(const PointerMatrix& B, const TagGrid& C);
ModResult mod_a3_eval(const PointerMatrix& B, const TagGrid& C, int k);      // 2 branches
ModResult mod_a3star_eval(const PointerMatrix& B, const TagGrid& C, int k);  // 3 branches

enum class Variant { A1, A2, A3 };

struct BuiltInstance {
  PointerMatrix B;
  TagGrid C;
  std::vector<Coord> cert;
};

// Builds a 1-input of the given variant: marked column(s), a shared pointer
// tree reaching every non-marked column, upright tags on the certificate and
// random fill elsewhere. tag_choices = 2 or 3 selects the tag alphabet for
// the random fill. Throws std::invalid_argument on infeasible dimensions.
BuiltInstance build_one_instance(Variant v, int m, int ncols, int k, std::mt19937_64& rng,
                                 int tag_choices = 2);

}  // namespace tbf
