#include "tbf/pointerfn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tbf {

namespace {

int exact_log2(int n) {
  if (n <= 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("column count must be a power of two");
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

// Follows L/R pointers from `start` along the path to leaf j. Returns the
// visited cells (start included, leaf last), or empty on a null pointer.
std::vector<Coord> walk_path(const PointerMatrix& M, Coord start, int j) {
  std::vector<Coord> cells{start};
  for (std::uint8_t step : path_sequence(j, M.n)) {
    const Cell& cur = M.at(cells.back().first, cells.back().second);
    const std::optional<Coord>& nxt = step == 0 ? cur.l : cur.r;
    if (!nxt) return {};
    cells.push_back(*nxt);
  }
  return cells;
}

void add_column_cells(std::vector<Coord>& cert, const PointerMatrix& M, int col) {
  for (int r = 1; r <= M.m; ++r) cert.emplace_back(r, col);
}

void finish_cert(std::vector<Coord>& cert) {
  std::sort(cert.begin(), cert.end());
  cert.erase(std::unique(cert.begin(), cert.end()), cert.end());
}

bool tags_all(const TagGrid& C, const std::vector<Coord>& cert, Tag want) {
  for (const auto& [r, c] : cert)
    if (C.at(r, c) != want) return false;
  return true;
}

}  // namespace

std::vector<std::uint8_t> path_sequence(int j, int ncols) {
  int depth = exact_log2(ncols);
  if (j < 1 || j > ncols) throw std::out_of_range("leaf index out of range");
  std::vector<std::uint8_t> path(depth);
  for (int d = 0; d < depth; ++d) path[d] = static_cast<std::uint8_t>((j - 1) >> (depth - 1 - d) & 1);
  return path;
}

std::vector<Coord> find_marked_columns(const PointerMatrix& M) {
  std::vector<Coord> out;
  for (int c = 1; c <= M.n; ++c) {
    int special = 0, count = 0;
    for (int r = 1; r <= M.m; ++r)
      if (!M.at(r, c).trivial()) {
        ++count;
        special = r;
      }
    if (count == 1) out.emplace_back(c, special);
  }
  return out;
}

EvalResult a1_eval(const PointerMatrix& M) {
  if (M.type != MatrixType::ColPtr)
    throw std::invalid_argument("a1_eval needs a column-pointer matrix");
  auto marked = find_marked_columns(M);
  if (marked.size() != 1) return {};
  auto [jstar, istar] = marked[0];
  // Every non-marked column must hold a reachable leaf with value 0 pointing
  // back at the marked column. The walk pattern serving a column is not fixed,
  // which is what makes the value stable under coordinate relabelings.
  std::vector<char> covered(M.n + 1, 0);
  std::vector<Coord> cert;
  add_column_cells(cert, M, jstar);
  for (int p = 1; p <= M.n; ++p) {
    auto cells = walk_path(M, {istar, jstar}, p);
    if (cells.empty()) continue;
    Coord lc = cells.back();
    const Cell& leaf = M.at(lc.first, lc.second);
    if (lc.second == jstar || leaf.value != 0 || !leaf.bcol || *leaf.bcol != jstar) continue;
    covered[lc.second] = 1;
    cert.insert(cert.end(), cells.begin(), cells.end());
  }
  for (int j = 1; j <= M.n; ++j)
    if (j != jstar && !covered[j]) return {};
  finish_cert(cert);
  return {1, std::move(cert)};
}

EvalResult a2_eval(const PointerMatrix& M) {
  if (M.type != MatrixType::CellPtr)
    throw std::invalid_argument("a2_eval needs a cell-pointer matrix");
  auto marked = find_marked_columns(M);
  if (marked.size() != 1) return {};
  auto [jstar, istar] = marked[0];
  Coord special{istar, jstar};
  // Qualifying leaf for a column: reachable by some walk, value 0, living in
  // that column. Exactly half of the non-marked columns must admit a leaf that
  // points back at the special element; the per-column choice is free, so the
  // count is over columns rather than walk patterns and survives relabelings.
  std::vector<char> has_leaf(M.n + 1, 0), can_back(M.n + 1, 0), can_plain(M.n + 1, 0);
  std::vector<Coord> cert;
  add_column_cells(cert, M, jstar);
  for (int p = 1; p <= M.n; ++p) {
    auto cells = walk_path(M, special, p);
    if (cells.empty()) continue;
    Coord lc = cells.back();
    const Cell& leaf = M.at(lc.first, lc.second);
    if (lc.second == jstar || leaf.value != 0) continue;
    has_leaf[lc.second] = 1;
    if (leaf.bcell && *leaf.bcell == special)
      can_back[lc.second] = 1;
    else
      can_plain[lc.second] = 1;
    cert.insert(cert.end(), cells.begin(), cells.end());
  }
  int lo = 0, hi = 0;
  for (int j = 1; j <= M.n; ++j) {
    if (j == jstar) continue;
    if (!has_leaf[j]) return {};
    if (!can_plain[j]) ++lo;  // every qualifying leaf here points back
    if (can_back[j]) ++hi;
  }
  if (lo > M.n / 2 || hi < M.n / 2) return {};
  finish_cert(cert);
  return {1, std::move(cert)};
}

EvalResult a3_eval(const PointerMatrix& M, int k) {
  if (M.type != MatrixType::CellPtr)
    throw std::invalid_argument("a3_eval needs a cell-pointer matrix");
  if (k < 1 || k >= M.n) throw std::invalid_argument("marked-column count out of range");
  auto marked = find_marked_columns(M);
  if (static_cast<int>(marked.size()) != k) return {};
  std::vector<Coord> specials;
  std::map<Coord, int> index;
  for (const auto& [col, row] : marked) {
    index[{row, col}] = static_cast<int>(specials.size());
    specials.emplace_back(row, col);
  }
  // one back-pointer cycle through every special element
  std::vector<char> seen(k, 0);
  int cur = 0;
  for (int step = 0; step < k; ++step) {
    const Cell& cell = M.at(specials[cur].first, specials[cur].second);
    if (!cell.bcell) return {};
    auto it = index.find(*cell.bcell);
    if (it == index.end() || seen[it->second]) return {};
    cur = it->second;
    seen[cur] = 1;
  }
  if (cur != 0) return {};
  // identical left and right pointers across the special elements
  for (int s = 1; s < k; ++s) {
    const Cell& a = M.at(specials[0].first, specials[0].second);
    const Cell& b = M.at(specials[s].first, specials[s].second);
    if (a.l != b.l || a.r != b.r) return {};
  }
  std::set<int> marked_cols;
  for (const auto& [col, row] : marked) marked_cols.insert(col);
  std::vector<Coord> cert;
  for (int col : marked_cols) add_column_cells(cert, M, col);
  std::set<Coord> special_set(specials.begin(), specials.end());
  std::vector<char> covered(M.n + 1, 0);
  for (int p = 1; p <= M.n; ++p) {
    auto cells = walk_path(M, specials[0], p);
    if (cells.empty()) continue;
    Coord lc = cells.back();
    const Cell& leaf = M.at(lc.first, lc.second);
    if (marked_cols.count(lc.second) || leaf.value != 0 || !leaf.bcell ||
        !special_set.count(*leaf.bcell))
      continue;
    covered[lc.second] = 1;
    cert.insert(cert.end(), cells.begin(), cells.end());
  }
  for (int j = 1; j <= M.n; ++j)
    if (!marked_cols.count(j) && !covered[j]) return {};
  finish_cert(cert);
  return {1, std::move(cert)};
}

PointerMatrix transpose(const PointerMatrix& M) {
  PointerMatrix out(M.type, M.n, M.m);
  for (int r = 1; r <= M.m; ++r)
    for (int c = 1; c <= M.n; ++c) out.at(c, r) = M.at(r, c);
  return out;
}

TagGrid transpose(const TagGrid& C) {
  TagGrid out(C.n, C.m);
  for (int r = 1; r <= C.m; ++r)
    for (int c = 1; c <= C.n; ++c) out.at(c, r) = C.at(r, c);
  return out;
}

namespace {

// (row, col) <-> (x, y, z) addressing of an n x n^2 matrix: column
// c = (z - 1) * n + y selects brick z and in-brick column y.
template <typename MatLike>
void brick_remap(const MatLike& src, MatLike& dst, BrickRot rot, int n) {
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      for (int z = 1; z <= n; ++z) {
        int sr = rot == BrickRot::Top ? y : z;
        int sy = rot == BrickRot::Top ? z : x;
        int sz = rot == BrickRot::Top ? x : y;
        dst.at(x, (z - 1) * n + y) = src.at(sr, (sz - 1) * n + sy);
      }
}

}  // namespace

PointerMatrix brick_rot(const PointerMatrix& M, BrickRot rot) {
  if (!M.has_brick_view()) throw std::invalid_argument("matrix has no brick view");
  PointerMatrix out(M.type, M.m, M.n);
  brick_remap(M, out, rot, M.m);
  return out;
}

TagGrid brick_rot(const TagGrid& C, BrickRot rot) {
  if (C.n != C.m * C.m) throw std::invalid_argument("tag grid has no brick view");
  TagGrid out(C.m, C.n);
  brick_remap(C, out, rot, C.m);
  return out;
}

PointerMatrix permute_matrix(const PointerMatrix& M, const std::vector<int>& sigma_row,
                             const std::vector<int>& sigma_col) {
  if (static_cast<int>(sigma_row.size()) != M.m || static_cast<int>(sigma_col.size()) != M.n)
    throw std::invalid_argument("permutation sizes must match the matrix");
  auto map_coord = [&](Coord p) -> Coord {
    return {sigma_row[p.first - 1], sigma_col[p.second - 1]};
  };
  PointerMatrix out(M.type, M.m, M.n);
  for (int r = 1; r <= M.m; ++r)
    for (int c = 1; c <= M.n; ++c) {
      Cell cell = M.at(r, c);
      if (cell.l) cell.l = map_coord(*cell.l);
      if (cell.r) cell.r = map_coord(*cell.r);
      if (cell.bcol) cell.bcol = sigma_col[*cell.bcol - 1];
      if (cell.bcell) cell.bcell = map_coord(*cell.bcell);
      out.at(sigma_row[r - 1], sigma_col[c - 1]) = cell;
    }
  return out;
}

ModResult mod_a1_eval(const PointerMatrix& B, const TagGrid& C) {
  ModResult res;
  auto r1 = a1_eval(B);
  if (r1.value == 1 && tags_all(C, r1.cert, Tag::Upright)) res.branch[0] = true;
  auto r2 = a1_eval(transpose(B));
  if (r2.value == 1 && tags_all(transpose(C), r2.cert, Tag::Swapped)) res.branch[2] = true;
  res.value = (res.branch[0] || res.branch[2]) ? 1 : 0;
  return res;
}

ModResult mod_a2_eval(const PointerMatrix& B, const TagGrid& C) {
  ModResult res;
  auto r1 = a2_eval(B);
  if (r1.value == 1 && tags_all(C, r1.cert, Tag::Upright)) res.branch[0] = true;
  auto r2 = a2_eval(transpose(B));
  if (r2.value == 1 && tags_all(transpose(C), r2.cert, Tag::Swapped)) res.branch[2] = true;
  res.value = (res.branch[0] || res.branch[2]) ? 1 : 0;
  return res;
}

ModResult mod_a3_eval(const PointerMatrix& B, const TagGrid& C, int k) {
  ModResult res;
  auto r1 = a3_eval(B, k);
  if (r1.value == 1 && tags_all(C, r1.cert, Tag::Upright)) res.branch[0] = true;
  auto r2 = a3_eval(transpose(B), k);
  if (r2.value == 1 && tags_all(transpose(C), r2.cert, Tag::Swapped)) res.branch[2] = true;
  res.value = (res.branch[0] || res.branch[2]) ? 1 : 0;
  return res;
}

ModResult mod_a3star_eval(const PointerMatrix& B, const TagGrid& C, int k) {
  ModResult res;
  auto r1 = a3_eval(B, k);
  if (r1.value == 1 && tags_all(C, r1.cert, Tag::Upright)) res.branch[0] = true;
  auto r2 = a3_eval(brick_rot(B, BrickRot::Top), k);
  if (r2.value == 1 && tags_all(brick_rot(C, BrickRot::Top), r2.cert, Tag::Rotated))
    res.branch[1] = true;
  auto r3 = a3_eval(brick_rot(B, BrickRot::Swapped), k);
  if (r3.value == 1 && tags_all(brick_rot(C, BrickRot::Swapped), r3.cert, Tag::Swapped))
    res.branch[2] = true;
  res.value = (res.branch[0] || res.branch[1] || res.branch[2]) ? 1 : 0;
  return res;
}

// --- positive-instance builder ----------------------------------------------

BuiltInstance build_one_instance(Variant v, int m, int ncols, int k, std::mt19937_64& rng,
                                 int tag_choices) {
  exact_log2(ncols);
  if (v != Variant::A3) k = 1;
  if (k < 1 || k >= ncols) throw std::invalid_argument("marked-column count out of range");
  if (v == Variant::A2 && ncols % 2 != 0) throw std::invalid_argument("a2 needs an even width");
  if (tag_choices != 2 && tag_choices != 3) throw std::invalid_argument("tag alphabet size");
  MatrixType type = (v == Variant::A1) ? MatrixType::ColPtr : MatrixType::CellPtr;
  PointerMatrix B(type, m, ncols);
  TagGrid C(m, ncols);

  // marked columns and their special rows
  std::vector<int> cols(ncols);
  std::iota(cols.begin(), cols.end(), 1);
  std::shuffle(cols.begin(), cols.end(), rng);
  std::vector<int> marked(cols.begin(), cols.begin() + k);
  std::sort(marked.begin(), marked.end());
  std::set<int> marked_set(marked.begin(), marked.end());
  std::vector<Coord> specials;
  for (int col : marked)
    specials.emplace_back(std::uniform_int_distribution<int>(1, m)(rng), col);

  // heap-indexed balanced tree: leaf j <-> node ncols + j - 1, root = node 1
  std::vector<int> non_marked;
  for (int c = 1; c <= ncols; ++c)
    if (!marked_set.count(c)) non_marked.push_back(c);
  std::set<int> needed;  // internal nodes (>= 2) on some walk, plus leaves
  for (int j : non_marked) {
    for (int h = ncols + j - 1; h > 1; h /= 2) needed.insert(h);
  }

  // place every needed node: leaves in their own column, internal nodes
  // round-robin on the least-loaded non-marked columns
  std::map<int, int> load;  // column -> placed cells
  std::map<int, std::vector<int>> nodes_in_col;
  for (int j : non_marked) {
    load[j] = 1;
    nodes_in_col[j].push_back(ncols + j - 1);
  }
  for (int h : needed) {
    if (h >= ncols) continue;  // leaf, already placed
    int best = -1;
    for (int j : non_marked)
      if (load[j] < m && (best < 0 || load[j] < load[best])) best = j;
    if (best < 0) throw std::invalid_argument("not enough rows to place the pointer tree");
    ++load[best];
    nodes_in_col[best].push_back(h);
  }
  // top every non-marked column up to two placed cells so it stays non-marked
  std::map<int, int> dummies;
  for (int j : non_marked)
    while (load[j] < 2) {
      if (load[j] >= m) throw std::invalid_argument("not enough rows to pad a column");
      ++load[j];
      ++dummies[j];
    }

  // assign distinct random rows per column
  std::map<int, Coord> cell_of;  // node -> coordinates
  std::map<int, std::vector<int>> dummy_rows;
  for (int j : non_marked) {
    std::vector<int> rows(m);
    std::iota(rows.begin(), rows.end(), 1);
    std::shuffle(rows.begin(), rows.end(), rng);
    int next = 0;
    for (int h : nodes_in_col[j]) cell_of[h] = {rows[next++], j};
    for (int d = 0; d < dummies[j]; ++d) dummy_rows[j].push_back(rows[next++]);
  }

  auto child_ptr = [&](int h, int side) -> std::optional<Coord> {
    auto it = cell_of.find(2 * h + side);
    if (it == cell_of.end()) return std::nullopt;
    return it->second;
  };

  // trivial background, then marked columns: special only
  for (auto& cell : B.cells) cell = Cell{};
  for (int s = 0; s < k; ++s) {
    Cell& sp = B.at(specials[s].first, specials[s].second);
    sp.value = 1;
    sp.l = child_ptr(1, 0);
    sp.r = child_ptr(1, 1);
    if (v == Variant::A3) sp.bcell = specials[(s + 1) % k];
  }
  // internal nodes
  for (auto& [h, coord] : cell_of) {
    if (h >= ncols) continue;
    Cell& cell = B.at(coord.first, coord.second);
    cell.value = 1;
    cell.l = child_ptr(h, 0);
    cell.r = child_ptr(h, 1);
  }
  // leaves
  std::vector<int> a2_selected;
  if (v == Variant::A2) {
    a2_selected = non_marked;
    std::shuffle(a2_selected.begin(), a2_selected.end(), rng);
    a2_selected.resize(ncols / 2);
  }
  std::set<int> a2_set(a2_selected.begin(), a2_selected.end());
  for (int j : non_marked) {
    Cell& leaf = B.at(cell_of[ncols + j - 1].first, j);
    leaf.value = 0;
    if (v == Variant::A1) leaf.bcol = marked[0];
    else if (v == Variant::A2) {
      if (a2_set.count(j)) leaf.bcell = specials[0];
    } else {
      leaf.bcell = specials[std::uniform_int_distribution<int>(0, k - 1)(rng)];
    }
  }
  // dummies keep their column non-marked without joining the certificate
  for (auto& [j, rows] : dummy_rows)
    for (int r : rows) B.at(r, j).value = 0;

  // certificate: marked columns plus every placed tree cell
  std::vector<Coord> cert;
  for (int col : marked) add_column_cells(cert, B, col);
  for (auto& [h, coord] : cell_of) cert.push_back(coord);
  finish_cert(cert);
  std::set<Coord> cert_set(cert.begin(), cert.end());
  std::set<Coord> reserved = cert_set;
  for (auto& [j, rows] : dummy_rows)
    for (int r : rows) reserved.insert({r, j});

  // random fill outside the reserved cells, random tags outside the certificate
  std::uniform_int_distribution<int> row_d(1, m), col_d(1, ncols), bit(0, 1);
  auto rand_coord = [&]() -> Coord { return {row_d(rng), col_d(rng)}; };
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= ncols; ++c) {
      if (marked_set.count(c) || reserved.count({r, c})) continue;
      Cell& cell = B.at(r, c);
      cell.value = bit(rng);
      if (bit(rng)) cell.l = rand_coord();
      if (bit(rng)) cell.r = rand_coord();
      if (bit(rng)) {
        if (type == MatrixType::ColPtr) cell.bcol = col_d(rng);
        else cell.bcell = rand_coord();
      }
    }
  static const Tag kTags[3] = {Tag::Upright, Tag::Rotated, Tag::Swapped};
  for (int r = 1; r <= m; ++r)
    for (int c = 1; c <= ncols; ++c) {
      if (cert_set.count({r, c})) continue;
      int t = std::uniform_int_distribution<int>(0, tag_choices - 1)(rng);
      if (tag_choices == 2 && t == 1) C.at(r, c) = Tag::Swapped;
      else C.at(r, c) = kTags[t];
    }
  return {std::move(B), std::move(C), std::move(cert)};
}

}  // namespace tbf
