// Transitive permutation groups on the bit indices of encoded pointer-matrix
// inputs: per-cell part transpositions, per-part block operations, and cell
// permutations that move whole cells while applying a per-block push map to
// every block (position codes and cell coordinates move together).
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tbf/bitstring.hpp"
#include "tbf/codec.hpp"

namespace tbf {

// Subtree-swap generators of the balanced tree over k leaf positions, as push
// maps of [k] (0-based). k must be a power of two; k-1 generators, the first
// one the root swap.
std::vector<std::vector<int>> bt_generators(int k);

struct Geometry {
  EncodingScheme scheme;
  int rows = 0, cols = 0;
  long long N = 0;

  static Geometry make(SchemeId id, int n);  // Dec96/Dec112: n x n; Dec240: n x n^2

  struct Addr {
    int r, c, part, block, off;  // 1-based; off in [1, blocklen]
  };
  Addr to_addr(long long idx) const;
  long long to_flat(const Addr& a) const;
};

// One cell permutation: push map on block offsets plus the induced action on
// cell coordinates. kind_src[d] names the old component that lands in new
// component d; idx_map[e] relabels old component e (1-based, identity-sized n).
struct CellPermEntry {
  std::vector<int> push;  // size blocklen, 0-based
  std::array<int, 3> kind_src = {0, 1, 2};
  std::array<std::vector<int>, 3> idx_map;
  bool rotation = false;  // Dec240 whole-third rotations
  std::string name;
};

enum class GenClass { PartPerm, BlockPerm, CellPermTree, CellPermRotation };

struct GeneratorDescriptor {
  GenClass cls;
  int cell_r = 0, cell_c = 0;  // PartPerm/BlockPerm
  int part = 0;                // PartPerm: swaps (part, part+1); BlockPerm: target part
  BlockOp op = BlockOp::SBS;   // BlockPerm
  int cellperm = -1;           // CellPermTree/CellPermRotation: index into entries
};

struct GeneratorSystem {
  Geometry geom;
  std::vector<CellPermEntry> cellperms;
  // Leaf-pair flip entries by (component kind, 1-based bb digit).
  std::array<std::vector<int>, 3> bitflip_entry;

  static GeneratorSystem make(SchemeId id, int n);

  std::vector<GeneratorDescriptor> all_generators() const;

  long long apply_index(const GeneratorDescriptor& g, long long idx) const;
  // y[pi(i)] = x[i]; content_update=false moves cells without rewriting their
  // bits (the deliberately broken control used by the negative test).
  BitString apply_input(const GeneratorDescriptor& g, const BitString& x,
                        bool content_update = true) const;
};

// Size of the orbit of index start under all generators (BFS).
long long orbit_size(const GeneratorSystem& gs, long long start = 0);

// Word of generators mapping index p to index q: offset alignment inside the
// block, cell alignment by digit flips, part alignment, block alignment, and
// a final flip fix. The true address is tracked after every step.
std::vector<GeneratorDescriptor> map_index(const GeneratorSystem& gs, long long p, long long q);

struct InvarianceViolation {
  std::size_t input_index;
  GeneratorDescriptor gen;
};

struct InvarianceReport {
  long long checks = 0;
  std::vector<InvarianceViolation> violations;
  std::array<long long, 4> per_class = {0, 0, 0, 0};
};

// Applies per_class sampled generators of every available class to every
// input and compares evaluator values. threads >= 1; the result does not
// depend on the thread count.
InvarianceReport invariance_check(const GeneratorSystem& gs,
                                  const std::function<int(const BitString&)>& evaluator,
                                  const std::vector<BitString>& inputs, int per_class,
                                  std::mt19937_64& rng, int threads = 1,
                                  bool break_pointer_update = false);

}  // namespace tbf
