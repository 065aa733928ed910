#include "tbf/groups.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <stdexcept>
#include <thread>

namespace tbf {

namespace {

bool is_pow2(int k) { return k > 0 && (k & (k - 1)) == 0; }

// Positions covered by the balanced tree over m slots laid out under a
// complete tree with 2^k base leaves (2^k the largest power of two <= m);
// the first m - 2^k base leaves get a pair of child slots each, the rest one
// slot each. pos(i) is the first slot (0-based) under base leaf i.
struct RaggedTree {
  int m = 0;
  int base = 0;   // number of base leaves, a power of two
  int extra = 0;  // base leaves owning two slots

  explicit RaggedTree(int slots) : m(slots) {
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("tree needs an even slot count >= 2");
    base = 1;
    while (base * 2 <= m) base *= 2;
    extra = m - base;
  }

  int pos(int leaf) const { return leaf <= extra ? 2 * leaf : extra + leaf; }

  // Emits one concatenation-swap push per internal node, root first.
  // Each node covering [lo, hi) with children [lo, mid) and [mid, hi) swaps
  // the two child segments; offset shifts every push into a longer block.
  void emit(int offset, std::vector<std::pair<int, int>>* pairs,
            std::vector<std::vector<int>>* out, int blocklen) const {
    struct Node {
      int bl, bh;  // base-leaf range
    };
    std::queue<Node> bfs;
    bfs.push({0, base});
    while (!bfs.empty()) {
      Node nd = bfs.front();
      bfs.pop();
      if (nd.bh - nd.bl == 1) {
        if (nd.bl < extra) {
          int lo = pos(nd.bl);
          out->push_back(segment_swap(offset + lo, offset + lo + 1, offset + lo + 2, blocklen));
          pairs->push_back({offset + lo, offset + lo + 1});
        }
        continue;
      }
      int mid = (nd.bl + nd.bh) / 2;
      int lo = pos(nd.bl), cut = pos(mid), hi = pos(nd.bh);
      out->push_back(segment_swap(offset + lo, offset + cut, offset + hi, blocklen));
      if (hi - lo == 2) pairs->push_back({offset + lo, offset + lo + 1});
      bfs.push({nd.bl, mid});
      bfs.push({mid, nd.bh});
    }
  }

  static std::vector<int> segment_swap(int lo, int cut, int hi, int blocklen) {
    std::vector<int> push(blocklen);
    for (int i = 0; i < blocklen; ++i) push[i] = i;
    int a = cut - lo, b = hi - cut;
    for (int i = lo; i < cut; ++i) push[i] = i + b;
    for (int i = cut; i < hi; ++i) push[i] = i - a;
    return push;
  }
};

struct CellAction {
  std::array<int, 3> kind_dst;  // kind_dst[k]: kind of the pushed code of kind k
  std::array<std::vector<int>, 3> map;  // map[k][i]: index decoded from the pushed code
};

// Applies the push to every coordinate code of the scheme and decodes the
// result. Any failure here means the push is not an allowed symmetry.
CellAction derive_cell_action(const EncodingScheme& sc, const std::vector<int>& push) {
  CellAction act;
  int kinds = sc.three_tags() ? 3 : 2;
  for (int k = 0; k < 3; ++k) {
    act.kind_dst[k] = k;
    act.map[k].assign(sc.n + 1, 0);
    for (int i = 0; i <= sc.n; ++i) act.map[k][i] = i;
  }
  for (int k = 0; k < kinds; ++k) {
    std::vector<bool> seen(sc.n + 1, false);
    int dst = -1;
    for (int i = 1; i <= sc.n; ++i) {
      BitString code = sc.three_tags() ? encode_E3(static_cast<EKind>(k), i, sc.logn)
                                       : encode_E(static_cast<EKind>(k), i, sc.logn);
      BitString moved(code.size());
      for (std::size_t t = 0; t < code.size(); ++t)
        if (code.get(t)) moved.set(push[t], true);
      auto dec = sc.three_tags() ? decode_E3(moved) : decode_E(moved);
      int dk = static_cast<int>(dec.first);
      if (dst == -1) dst = dk;
      if (dk != dst) throw std::logic_error("push does not act uniformly on a coordinate kind");
      if (seen[dec.second]) throw std::logic_error("push is not injective on coordinate codes");
      seen[dec.second] = true;
      act.map[k][i] = dec.second;
    }
    act.kind_dst[k] = dst;
  }
  return act;
}

std::array<int, 3> cell_comps(const Geometry& g, int r, int c) {
  if (g.scheme.three_tags()) {
    int y = (c - 1) % g.scheme.n + 1;
    int z = (c - 1) / g.scheme.n + 1;
    return {r, y, z};
  }
  return {r, c, 1};
}

void comps_to_cell(const Geometry& g, const std::array<int, 3>& comps, int* r, int* c) {
  *r = comps[0];
  if (g.scheme.three_tags())
    *c = (comps[2] - 1) * g.scheme.n + comps[1];
  else
    *c = comps[1];
}

// Block arrangement of one generator op: slot s receives block src[s],
// flipped iff flip[s]. Matches the word-level transforms in the codec.
struct OpTable {
  std::array<int, 4> src;
  std::array<int, 4> flip;
};

const OpTable& op_table(BlockOp op) {
  static const OpTable kSBS = {{2, 3, 0, 1}, {0, 0, 0, 0}};
  static const OpTable kBF1 = {{1, 0, 2, 3}, {0, 0, 1, 1}};
  static const OpTable kBF2 = {{0, 1, 3, 2}, {1, 1, 0, 0}};
  switch (op) {
    case BlockOp::SBS: return kSBS;
    case BlockOp::BF1: return kBF1;
    default: return kBF2;
  }
}

}  // namespace

std::vector<std::vector<int>> bt_generators(int k) {
  if (!is_pow2(k) || k < 2) throw std::invalid_argument("bt_generators needs a power of two >= 2");
  RaggedTree tree(k);
  std::vector<std::vector<int>> out;
  std::vector<std::pair<int, int>> pairs;
  tree.emit(0, &pairs, &out, k);
  return out;
}

Geometry Geometry::make(SchemeId id, int n) {
  Geometry g;
  g.scheme = EncodingScheme::make(id, n);
  g.rows = n;
  g.cols = (id == SchemeId::Dec240) ? n * n : n;
  g.N = static_cast<long long>(g.rows) * g.cols * g.scheme.cellbits;
  return g;
}

Geometry::Addr Geometry::to_addr(long long idx) const {
  Addr a;
  long long cell = idx / scheme.cellbits;
  int inner = static_cast<int>(idx % scheme.cellbits);
  a.r = static_cast<int>(cell / cols) + 1;
  a.c = static_cast<int>(cell % cols) + 1;
  a.part = inner / (4 * scheme.blocklen) + 1;
  int rem = inner % (4 * scheme.blocklen);
  a.block = rem / scheme.blocklen + 1;
  a.off = rem % scheme.blocklen + 1;
  return a;
}

long long Geometry::to_flat(const Addr& a) const {
  long long cell = static_cast<long long>(a.r - 1) * cols + (a.c - 1);
  int inner = (a.part - 1) * 4 * scheme.blocklen + (a.block - 1) * scheme.blocklen + (a.off - 1);
  return cell * scheme.cellbits + inner;
}

GeneratorSystem GeneratorSystem::make(SchemeId id, int n) {
  GeneratorSystem gs;
  gs.geom = Geometry::make(id, n);
  const EncodingScheme& sc = gs.geom.scheme;

  std::vector<std::vector<int>> pushes;
  std::vector<std::pair<int, int>> pairs;
  if (sc.three_tags()) {
    int third = sc.blocklen / 3;
    for (int t = 0; t < 3; ++t) RaggedTree(third).emit(t * third, &pairs, &pushes, sc.blocklen);
  } else {
    if (!is_pow2(sc.blocklen))
      throw std::invalid_argument("cell permutations need a power-of-two block length");
    RaggedTree(sc.blocklen).emit(0, &pairs, &pushes, sc.blocklen);
  }

  for (std::size_t i = 0; i < pushes.size(); ++i) {
    CellPermEntry e;
    e.push = pushes[i];
    CellAction act = derive_cell_action(sc, e.push);
    if (act.kind_dst[0] == 0) {
      // Kind-preserving subtree swap: coordinates follow their own pushed
      // codes directly.
      for (int k = 0; k < 3; ++k) {
        if (act.kind_dst[k] != k) throw std::logic_error("mixed-kind subtree swap");
        e.idx_map[k] = act.map[k];
      }
    } else {
      // Row/column halves exchanged: the induced cell map is the transpose.
      if (sc.three_tags() || act.kind_dst[0] != 1 || act.kind_dst[1] != 0)
        throw std::logic_error("unexpected kind action for a subtree swap");
      e.kind_src = {1, 0, 2};
      for (int k = 0; k < 3; ++k) e.idx_map[k] = act.map[k];
    }
    e.name = "swap@" + std::to_string(i);
    gs.cellperms.push_back(std::move(e));
  }

  for (int k = 0; k < 3; ++k) gs.bitflip_entry[k].assign(sc.logn + 1, -1);
  int kinds = sc.three_tags() ? 3 : 2;
  int region = sc.three_tags() ? sc.blocklen / 3 : sc.blocklen / 2;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    // Find the entry whose push is exactly this transposition.
    for (std::size_t e = 0; e < gs.cellperms.size(); ++e) {
      const std::vector<int>& p = gs.cellperms[e].push;
      if (p[pairs[i].first] == pairs[i].second && p[pairs[i].second] == pairs[i].first) {
        bool pure = true;
        for (int t = 0; t < sc.blocklen; ++t)
          if (t != pairs[i].first && t != pairs[i].second && p[t] != t) pure = false;
        if (!pure) continue;
        int kind = pairs[i].first / region;
        int digit = (pairs[i].first % region) / 2 + 1;
        if (kind < kinds && digit <= sc.logn) gs.bitflip_entry[kind][digit] = static_cast<int>(e);
        break;
      }
    }
  }
  for (int k = 0; k < kinds; ++k)
    for (int d = 1; d <= sc.logn; ++d)
      if (gs.bitflip_entry[k][d] < 0) throw std::logic_error("missing digit-flip generator");

  if (sc.three_tags()) {
    // Whole-third rotations. The pushed code of kind k reads as kind k+1
    // (rot1) or k+2 (rot2); the cell motion that keeps evaluation consistent
    // is the inverse of that relabeling, checked here against the codes.
    struct RotSpec {
      std::vector<int> (*push)(int);
      int shift;
      const char* name;
    };
    const RotSpec specs[2] = {{rot1_push, 1, "Rotation1"}, {rot2_push, 2, "Rotation2"}};
    for (const RotSpec& rs : specs) {
      CellPermEntry e;
      e.push = rs.push(sc.blocklen);
      e.rotation = true;
      e.name = rs.name;
      CellAction act = derive_cell_action(sc, e.push);
      for (int k = 0; k < 3; ++k) {
        if (act.kind_dst[k] != (k + rs.shift) % 3)
          throw std::logic_error("rotation push has unexpected kind action");
        for (int i = 1; i <= sc.n; ++i)
          if (act.map[k][i] != i) throw std::logic_error("rotation push relabels indices");
        e.kind_src[k] = (k + rs.shift) % 3;
        e.idx_map[k] = act.map[k];
      }
      gs.cellperms.push_back(std::move(e));
    }
  }
  return gs;
}

std::vector<GeneratorDescriptor> GeneratorSystem::all_generators() const {
  std::vector<GeneratorDescriptor> out;
  const EncodingScheme& sc = geom.scheme;
  for (int r = 1; r <= geom.rows; ++r)
    for (int c = 1; c <= geom.cols; ++c) {
      for (int p = 1; p < sc.parts; ++p) {
        GeneratorDescriptor g;
        g.cls = GenClass::PartPerm;
        g.cell_r = r;
        g.cell_c = c;
        g.part = p;
        out.push_back(g);
      }
      for (int p = 1; p <= sc.parts; ++p)
        for (BlockOp op : {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2}) {
          GeneratorDescriptor g;
          g.cls = GenClass::BlockPerm;
          g.cell_r = r;
          g.cell_c = c;
          g.part = p;
          g.op = op;
          out.push_back(g);
        }
    }
  for (std::size_t i = 0; i < cellperms.size(); ++i) {
    GeneratorDescriptor g;
    g.cls = cellperms[i].rotation ? GenClass::CellPermRotation : GenClass::CellPermTree;
    g.cellperm = static_cast<int>(i);
    out.push_back(g);
  }
  return out;
}

long long GeneratorSystem::apply_index(const GeneratorDescriptor& g, long long idx) const {
  Geometry::Addr a = geom.to_addr(idx);
  switch (g.cls) {
    case GenClass::PartPerm:
      if (a.r == g.cell_r && a.c == g.cell_c) {
        if (a.part == g.part)
          a.part = g.part + 1;
        else if (a.part == g.part + 1)
          a.part = g.part;
      }
      break;
    case GenClass::BlockPerm:
      if (a.r == g.cell_r && a.c == g.cell_c && a.part == g.part) {
        const OpTable& t = op_table(g.op);
        int b0 = a.block - 1;
        for (int s = 0; s < 4; ++s)
          if (t.src[s] == b0) {
            a.block = s + 1;
            if (t.flip[s]) a.off = ((a.off - 1) ^ 1) + 1;
            break;
          }
      }
      break;
    case GenClass::CellPermTree:
    case GenClass::CellPermRotation: {
      const CellPermEntry& e = cellperms[g.cellperm];
      std::array<int, 3> comps = cell_comps(geom, a.r, a.c);
      std::array<int, 3> nc;
      for (int d = 0; d < 3; ++d) nc[d] = e.idx_map[e.kind_src[d]][comps[e.kind_src[d]]];
      comps_to_cell(geom, nc, &a.r, &a.c);
      a.off = e.push[a.off - 1] + 1;
      break;
    }
  }
  return geom.to_flat(a);
}

BitString GeneratorSystem::apply_input(const GeneratorDescriptor& g, const BitString& x,
                                       bool content_update) const {
  if (static_cast<long long>(x.size()) != geom.N)
    throw std::invalid_argument("input length does not match the geometry");
  const EncodingScheme& sc = geom.scheme;
  if (g.cls == GenClass::PartPerm || g.cls == GenClass::BlockPerm) {
    BitString y = x;
    long long base =
        (static_cast<long long>(g.cell_r - 1) * geom.cols + (g.cell_c - 1)) * sc.cellbits;
    BitString w = x.slice(base, sc.cellbits);
    if (g.cls == GenClass::PartPerm)
      apply_part_transposition(w, sc, g.part);
    else
      apply_block_op(w, sc, g.part, g.op);
    y.assign_range(base, w);
    return y;
  }
  const CellPermEntry& e = cellperms[g.cellperm];
  BitString y(x.size());
  for (int r = 1; r <= geom.rows; ++r)
    for (int c = 1; c <= geom.cols; ++c) {
      std::array<int, 3> comps = cell_comps(geom, r, c);
      std::array<int, 3> nc;
      for (int d = 0; d < 3; ++d) nc[d] = e.idx_map[e.kind_src[d]][comps[e.kind_src[d]]];
      int nr, ncol;
      comps_to_cell(geom, nc, &nr, &ncol);
      long long src = (static_cast<long long>(r - 1) * geom.cols + (c - 1)) * sc.cellbits;
      long long dst = (static_cast<long long>(nr - 1) * geom.cols + (ncol - 1)) * sc.cellbits;
      for (int inner = 0; inner < sc.cellbits; ++inner) {
        int off = inner % sc.blocklen;
        int moved = content_update ? inner - off + e.push[off] : inner;
        if (x.get(src + inner)) y.set(dst + moved, true);
      }
    }
  return y;
}

long long orbit_size(const GeneratorSystem& gs, long long start) {
  const EncodingScheme& sc = gs.geom.scheme;
  if (start < 0 || start >= gs.geom.N) throw std::invalid_argument("orbit start out of range");
  std::vector<bool> seen(static_cast<std::size_t>(gs.geom.N), false);
  std::vector<long long> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  long long count = 0;
  // Generators anchored in other cells fix the index, so only the index's own
  // part/block generators and the shared cell permutations can move it.
  while (!stack.empty()) {
    long long idx = stack.back();
    stack.pop_back();
    ++count;
    Geometry::Addr a = gs.geom.to_addr(idx);
    std::vector<GeneratorDescriptor> local;
    for (int p = 1; p < sc.parts; ++p) {
      GeneratorDescriptor g;
      g.cls = GenClass::PartPerm;
      g.cell_r = a.r;
      g.cell_c = a.c;
      g.part = p;
      local.push_back(g);
    }
    for (BlockOp op : {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2}) {
      GeneratorDescriptor g;
      g.cls = GenClass::BlockPerm;
      g.cell_r = a.r;
      g.cell_c = a.c;
      g.part = a.part;
      g.op = op;
      local.push_back(g);
    }
    for (std::size_t i = 0; i < gs.cellperms.size(); ++i) {
      GeneratorDescriptor g;
      g.cls = gs.cellperms[i].rotation ? GenClass::CellPermRotation : GenClass::CellPermTree;
      g.cellperm = static_cast<int>(i);
      local.push_back(g);
    }
    for (const GeneratorDescriptor& g : local) {
      long long nxt = gs.apply_index(g, idx);
      if (!seen[static_cast<std::size_t>(nxt)]) {
        seen[static_cast<std::size_t>(nxt)] = true;
        stack.push_back(nxt);
      }
    }
  }
  return count;
}

std::vector<GeneratorDescriptor> map_index(const GeneratorSystem& gs, long long p, long long q) {
  const EncodingScheme& sc = gs.geom.scheme;
  if (p < 0 || p >= gs.geom.N || q < 0 || q >= gs.geom.N)
    throw std::invalid_argument("index out of range");
  std::vector<GeneratorDescriptor> word;
  long long cur = p;
  Geometry::Addr tgt = gs.geom.to_addr(q);

  auto push_gen = [&](const GeneratorDescriptor& g) {
    word.push_back(g);
    cur = gs.apply_index(g, cur);
  };

  // Step 1: move the in-block offset to the target offset using the cell
  // permutations, which act transitively on block positions.
  {
    Geometry::Addr a = gs.geom.to_addr(cur);
    if (a.off != tgt.off) {
      std::vector<int> prev(sc.blocklen, -1), via(sc.blocklen, -1);
      std::vector<int> bfs{a.off - 1};
      prev[a.off - 1] = a.off - 1;
      for (std::size_t h = 0; h < bfs.size(); ++h) {
        int at = bfs[h];
        for (std::size_t g = 0; g < gs.cellperms.size(); ++g) {
          int nxt = gs.cellperms[g].push[at];
          if (prev[nxt] < 0) {
            prev[nxt] = at;
            via[nxt] = static_cast<int>(g);
            bfs.push_back(nxt);
          }
        }
      }
      if (prev[tgt.off - 1] < 0) throw std::logic_error("block positions are not connected");
      std::vector<int> path;
      for (int at = tgt.off - 1; at != a.off - 1; at = prev[at]) path.push_back(via[at]);
      std::reverse(path.begin(), path.end());
      for (int g : path) {
        GeneratorDescriptor d;
        d.cls = gs.cellperms[g].rotation ? GenClass::CellPermRotation : GenClass::CellPermTree;
        d.cellperm = g;
        push_gen(d);
      }
    }
  }

  // Step 2: align the cell one coordinate digit at a time. Each digit flip
  // can bounce the offset within its two-bit pair; that is repaired last.
  {
    Geometry::Addr a = gs.geom.to_addr(cur);
    std::array<int, 3> have = cell_comps(gs.geom, a.r, a.c);
    std::array<int, 3> want = cell_comps(gs.geom, tgt.r, tgt.c);
    int kinds = sc.three_tags() ? 3 : 2;
    for (int k = 0; k < kinds; ++k) {
      int diff = (have[k] % sc.n) ^ (want[k] % sc.n);
      for (int d = 1; d <= sc.logn; ++d)
        if (diff & (1 << (sc.logn - d))) {
          GeneratorDescriptor g;
          g.cls = GenClass::CellPermTree;
          g.cellperm = gs.bitflip_entry[k][d];
          push_gen(g);
        }
    }
  }

  // Step 3: align the part with adjacent transpositions.
  {
    Geometry::Addr a = gs.geom.to_addr(cur);
    while (a.part != tgt.part) {
      GeneratorDescriptor g;
      g.cls = GenClass::PartPerm;
      g.cell_r = a.r;
      g.cell_c = a.c;
      g.part = a.part < tgt.part ? a.part : a.part - 1;
      push_gen(g);
      a = gs.geom.to_addr(cur);
    }
  }

  // Step 4: align the block; flips en route stay one pair swap away.
  {
    Geometry::Addr a = gs.geom.to_addr(cur);
    if (a.block != tgt.block) {
      // States are (block, net flip parity) pairs, flattened to [0, 8).
      int prev[8], via[8];
      std::fill(prev, prev + 8, -1);
      std::vector<int> bfs;
      int start = (a.block - 1) * 2;
      prev[start] = start;
      bfs.push_back(start);
      const BlockOp ops[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
      for (std::size_t h = 0; h < bfs.size(); ++h) {
        int at = bfs[h];
        int b0 = at / 2, f = at % 2;
        for (int o = 0; o < 3; ++o) {
          const OpTable& t = op_table(ops[o]);
          for (int s = 0; s < 4; ++s)
            if (t.src[s] == b0) {
              int nxt = s * 2 + (f ^ t.flip[s]);
              if (prev[nxt] < 0) {
                prev[nxt] = at;
                via[nxt] = o;
                bfs.push_back(nxt);
              }
              break;
            }
        }
      }
      int goal = (tgt.block - 1) * 2;
      if (prev[goal] < 0) goal = (tgt.block - 1) * 2 + 1;
      if (prev[goal] < 0) throw std::logic_error("block graph is not connected");
      std::vector<int> path;
      for (int at = goal; at != start; at = prev[at]) path.push_back(via[at]);
      std::reverse(path.begin(), path.end());
      for (int o : path) {
        GeneratorDescriptor g;
        g.cls = GenClass::BlockPerm;
        g.cell_r = a.r;
        g.cell_c = a.c;
        g.part = a.part;
        g.op = ops[o];
        push_gen(g);
      }
    }
  }

  // Step 5: the offset is now at most one pair swap off; BF1 flips pairs in
  // blocks 3 and 4 without moving them, BF2 does the same for blocks 1 and 2.
  {
    Geometry::Addr a = gs.geom.to_addr(cur);
    if (a.off != tgt.off) {
      GeneratorDescriptor g;
      g.cls = GenClass::BlockPerm;
      g.cell_r = a.r;
      g.cell_c = a.c;
      g.part = a.part;
      g.op = (a.block >= 3) ? BlockOp::BF1 : BlockOp::BF2;
      push_gen(g);
    }
  }

  if (cur != q) throw std::logic_error("index mapping did not converge");
  return word;
}

InvarianceReport invariance_check(const GeneratorSystem& gs,
                                  const std::function<int(const BitString&)>& evaluator,
                                  const std::vector<BitString>& inputs, int per_class,
                                  std::mt19937_64& rng, int threads,
                                  bool break_pointer_update) {
  const EncodingScheme& sc = gs.geom.scheme;
  std::vector<GeneratorDescriptor> gens;
  auto cell = [&](GeneratorDescriptor* g) {
    g->cell_r = static_cast<int>(rng() % gs.geom.rows) + 1;
    g->cell_c = static_cast<int>(rng() % gs.geom.cols) + 1;
  };
  std::vector<int> trees, rots;
  for (std::size_t i = 0; i < gs.cellperms.size(); ++i)
    (gs.cellperms[i].rotation ? rots : trees).push_back(static_cast<int>(i));
  for (int s = 0; s < per_class; ++s) {
    GeneratorDescriptor g;
    g.cls = GenClass::PartPerm;
    cell(&g);
    g.part = static_cast<int>(rng() % (sc.parts - 1)) + 1;
    gens.push_back(g);
  }
  for (int s = 0; s < per_class; ++s) {
    GeneratorDescriptor g;
    g.cls = GenClass::BlockPerm;
    cell(&g);
    g.part = static_cast<int>(rng() % sc.parts) + 1;
    const BlockOp ops[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
    g.op = ops[rng() % 3];
    gens.push_back(g);
  }
  for (int s = 0; s < per_class && !trees.empty(); ++s) {
    GeneratorDescriptor g;
    g.cls = GenClass::CellPermTree;
    g.cellperm = trees[rng() % trees.size()];
    gens.push_back(g);
  }
  for (int s = 0; s < per_class && !rots.empty(); ++s) {
    GeneratorDescriptor g;
    g.cls = GenClass::CellPermRotation;
    g.cellperm = rots[rng() % rots.size()];
    gens.push_back(g);
  }

  std::vector<int> baseline(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) baseline[i] = evaluator(inputs[i]);

  struct Job {
    std::size_t gen, input;
  };
  std::vector<Job> jobs;
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < inputs.size(); ++i) jobs.push_back({g, i});

  if (threads < 1) threads = 1;
  std::vector<std::vector<InvarianceViolation>> found(jobs.size());
  std::vector<std::thread> pool;
  std::size_t chunk = (jobs.size() + threads - 1) / std::max<std::size_t>(1, threads);
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi && j < jobs.size(); ++j) {
      const GeneratorDescriptor& g = gens[jobs[j].gen];
      bool cellmove =
          g.cls == GenClass::CellPermTree || g.cls == GenClass::CellPermRotation;
      bool content = !(break_pointer_update && cellmove);
      BitString y = gs.apply_input(g, inputs[jobs[j].input], content);
      if (evaluator(y) != baseline[jobs[j].input])
        found[j].push_back({jobs[j].input, g});
    }
  };
  if (threads == 1 || jobs.size() <= 1) {
    run(0, jobs.size());
  } else {
    for (int t = 0; t < threads; ++t) pool.emplace_back(run, t * chunk, (t + 1) * chunk);
    for (std::thread& t : pool) t.join();
  }

  InvarianceReport rep;
  rep.checks = static_cast<long long>(jobs.size());
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    rep.per_class[static_cast<int>(gens[jobs[j].gen].cls)]++;
    for (const InvarianceViolation& v : found[j]) rep.violations.push_back(v);
  }
  return rep;
}

}  // namespace tbf
