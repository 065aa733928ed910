// Full constructions: encoded pointer-matrix functions with their evaluators
// and instance builders, the k-sum gadget functions, and the desensitizing
// composition helpers.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "tbf/boolfn.hpp"
#include "tbf/groups.hpp"
#include "tbf/ksum.hpp"
#include "tbf/pointerfn.hpp"

namespace tbf {

enum class ConstructionId { F1, F2, F3a, F3b, F3c };

ConstructionId construction_from_string(const std::string& s);
std::string construction_name(ConstructionId id);

struct Construction {
  ConstructionId id;
  int n = 0;
  EncodingScheme scheme;
  int rows = 0, cols = 0;
  int k = 0;  // marked columns expected by the evaluator
  long long N = 0;

  static Construction make(ConstructionId id, int n);
  Geometry geometry() const;
  GeneratorSystem generators() const;
};

struct DecodedInput {
  PointerMatrix B;
  TagGrid C;
};

DecodedInput decode_input(const Construction& c, const BitString& x);
int f_eval(const Construction& c, const BitString& x);
ModResult f_eval_detail(const Construction& c, const BitString& x);

// Random 1-input: pointer-level instance builder plus standard-form encoding
// scrambled per cell by random legal part/block words. Certificate cells out
// via cert if non-null.
BitString build_one_input(const Construction& c, std::mt19937_64& rng,
                          std::vector<Coord>* cert = nullptr);

// --- k-sum gadget functions --------------------------------------------------

// 1 iff some k distinct blocks decode to values summing to 0 mod b^k.
int enc_ksum_eval(const KSumParams& p, int nblocks, const BitString& x);
// Same, additionally requiring every non-chosen block to have >= 6*gadgets ones.
int enc_block_ksum_eval(const KSumParams& p, int nblocks, const BitString& x);
// enc_block_ksum over b outer blocks, each outer bit produced by enc_ksum on
// its own b-block inner input; k = log2(b) at both levels.
int f_qvsc_eval(long long b, const BitString& x);
long long f_qvsc_arity(long long b);

FnPtr make_enc_ksum(long long b, int k, int nblocks);
FnPtr make_enc_block_ksum(long long b, int k, int nblocks);

// --- desensitization ---------------------------------------------------------

// Partial assignment (1-based index, bit).
using Restriction = std::vector<std::pair<int, int>>;

// (a) every restriction forces f=1, (b) every 1-input extends one of them,
// (c) restrictions are pairwise inconsistent.
bool validate_unambiguous(const FnPtr& f, const std::vector<Restriction>& U);

// f_DT on three copies: 1 iff all copies evaluate to 1 and all three match
// the same restriction of U.
FnPtr desensitize(const FnPtr& f, const std::vector<Restriction>& U);

// OR of width 3*max restriction size composed over the desensitized function.
FnPtr sensitivity_witness(const FnPtr& f, const std::vector<Restriction>& U);

}  // namespace tbf
