#include "tbf/constructions.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tbf {

namespace {

SchemeId scheme_for(ConstructionId id) {
  switch (id) {
    case ConstructionId::F1: return SchemeId::Dec96;
    case ConstructionId::F2:
    case ConstructionId::F3a: return SchemeId::Dec112;
    default: return SchemeId::Dec240;
  }
}

Coord coord_from_comp(const EncodingScheme& sc, const std::array<int, 3>& comp) {
  if (sc.three_tags()) return {comp[0], (comp[2] - 1) * sc.n + comp[1]};
  return {comp[0], comp[1]};
}

std::array<int, 3> comp_from_coord(const EncodingScheme& sc, const Coord& at) {
  if (sc.three_tags()) {
    int y = (at.second - 1) % sc.n + 1;
    int z = (at.second - 1) / sc.n + 1;
    return {at.first, y, z};
  }
  return {at.first, at.second, 0};
}

// Random walk over the decodability-preserving single-cell rearrangements.
void scramble_cell(BitString* w, const EncodingScheme& sc, std::mt19937_64& rng) {
  int ops = 6 + static_cast<int>(rng() % 6);
  const BlockOp kOps[3] = {BlockOp::SBS, BlockOp::BF1, BlockOp::BF2};
  for (int i = 0; i < ops; ++i) {
    if (rng() % 2 == 0)
      apply_part_transposition(*w, sc, static_cast<int>(rng() % (sc.parts - 1)) + 1);
    else
      apply_block_op(*w, sc, static_cast<int>(rng() % sc.parts) + 1, kOps[rng() % 3]);
  }
}

// 1 iff k distinct entries of the decoded values sum to 0 mod the alphabet.
int ksum_subset_exists(const std::vector<std::optional<long long>>& vals, const KSumParams& p) {
  std::size_t alph = static_cast<std::size_t>(p.alphabet);
  std::vector<std::vector<char>> dp(p.k + 1, std::vector<char>(alph, 0));
  dp[0][0] = 1;
  for (const auto& v : vals) {
    if (!v) continue;
    long long add = *v % p.alphabet;
    for (int j = p.k; j >= 1; --j)
      for (std::size_t s = 0; s < alph; ++s)
        if (dp[j - 1][s]) dp[j][(s + add) % alph] = 1;
  }
  return dp[p.k][0] ? 1 : 0;
}

struct EncKSumFn : BooleanFunction {
  KSumParams p;
  int nblocks = 0;
  bool dense_rest = false;

  int arity() const override { return nblocks * p.blockbits; }
  std::string describe() const override {
    return std::string(dense_rest ? "ENC_BLOCK_KSUM" : "ENC_KSUM") + ":" + std::to_string(p.b) +
           "," + std::to_string(p.k) + "," + std::to_string(nblocks);
  }
  int eval_bits(const std::uint8_t* x) const override {
    BitString w(static_cast<std::size_t>(arity()));
    for (int i = 0; i < arity(); ++i)
      if (x[i]) w.set(i, true);
    return dense_rest ? enc_block_ksum_eval(p, nblocks, w) : enc_ksum_eval(p, nblocks, w);
  }
};

struct DesensitizedFn : BooleanFunction {
  FnPtr f;
  std::vector<Restriction> U;
  int base = 0;

  int arity() const override { return 3 * base; }
  std::string describe() const override { return "DT(" + f->describe() + ")"; }
  // 1 iff every copy accepts and all three extend the same restriction.
  int eval_bits(const std::uint8_t* x) const override {
    int chosen = -1;
    for (int copy = 0; copy < 3; ++copy) {
      const std::uint8_t* part = x + copy * base;
      if (!f->eval_bits(part)) return 0;
      int match = -1;
      for (std::size_t i = 0; i < U.size() && match < 0; ++i) {
        bool ok = true;
        for (const auto& fix : U[i])
          if (part[fix.first - 1] != fix.second) {
            ok = false;
            break;
          }
        if (ok) match = static_cast<int>(i);
      }
      if (match < 0) return 0;
      if (copy == 0)
        chosen = match;
      else if (match != chosen)
        return 0;
    }
    return 1;
  }
};

}  // namespace

ConstructionId construction_from_string(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "f1") return ConstructionId::F1;
  if (t == "f2") return ConstructionId::F2;
  if (t == "f3a") return ConstructionId::F3a;
  if (t == "f3b" || t == "f3") return ConstructionId::F3b;
  if (t == "f3c") return ConstructionId::F3c;
  throw std::invalid_argument("unknown construction: " + s);
}

std::string construction_name(ConstructionId id) {
  switch (id) {
    case ConstructionId::F1: return "F1";
    case ConstructionId::F2: return "F2";
    case ConstructionId::F3a: return "F3a";
    case ConstructionId::F3b: return "F3b";
    default: return "F3c";
  }
}

Construction Construction::make(ConstructionId id, int n) {
  Construction c;
  c.id = id;
  c.n = n;
  c.scheme = EncodingScheme::make(scheme_for(id), n);
  c.rows = n;
  c.cols = c.scheme.three_tags() ? n * n : n;
  c.k = (id == ConstructionId::F3b) ? n : 1;
  c.N = static_cast<long long>(c.rows) * c.cols * c.scheme.cellbits;
  return c;
}

Geometry Construction::geometry() const { return Geometry::make(scheme.id, n); }

GeneratorSystem Construction::generators() const { return GeneratorSystem::make(scheme.id, n); }

DecodedInput decode_input(const Construction& c, const BitString& x) {
  if (static_cast<long long>(x.size()) != c.N)
    throw std::invalid_argument("input length does not match the construction");
  MatrixType mt = (c.id == ConstructionId::F1) ? MatrixType::ColPtr : MatrixType::CellPtr;
  DecodedInput out;
  out.B = PointerMatrix(mt, c.rows, c.cols);
  out.C = TagGrid(c.rows, c.cols);
  for (int r = 1; r <= c.rows; ++r)
    for (int col = 1; col <= c.cols; ++col) {
      long long base =
          (static_cast<long long>(r - 1) * c.cols + (col - 1)) * c.scheme.cellbits;
      DecodedCell d = dec(x.slice(base, c.scheme.cellbits), c.scheme);
      Cell cell;
      cell.value = d.sym.value;
      cell.l.reset();
      cell.r.reset();
      if (d.sym.l) cell.l = coord_from_comp(c.scheme, *d.sym.l);
      if (d.sym.r) cell.r = coord_from_comp(c.scheme, *d.sym.r);
      if (d.sym.b) {
        if (c.id == ConstructionId::F1)
          cell.bcol = (*d.sym.b)[1];
        else
          cell.bcell = coord_from_comp(c.scheme, *d.sym.b);
      }
      out.B.at(r, col) = cell;
      out.C.at(r, col) = d.tag;
    }
  return out;
}

ModResult f_eval_detail(const Construction& c, const BitString& x) {
  DecodedInput d = decode_input(c, x);
  switch (c.id) {
    case ConstructionId::F1: return mod_a1_eval(d.B, d.C);
    case ConstructionId::F2: return mod_a2_eval(d.B, d.C);
    case ConstructionId::F3a: return mod_a3_eval(d.B, d.C, 1);
    case ConstructionId::F3b: return mod_a3star_eval(d.B, d.C, c.n);
    default: return mod_a3star_eval(d.B, d.C, 1);
  }
}

int f_eval(const Construction& c, const BitString& x) { return f_eval_detail(c, x).value; }

BitString build_one_input(const Construction& c, std::mt19937_64& rng, std::vector<Coord>* cert) {
  Variant v = Variant::A3;
  if (c.id == ConstructionId::F1) v = Variant::A1;
  if (c.id == ConstructionId::F2) v = Variant::A2;
  BuiltInstance inst =
      build_one_instance(v, c.rows, c.cols, c.k, rng, c.scheme.three_tags() ? 3 : 2);
  BitString x(static_cast<std::size_t>(c.N));
  for (int r = 1; r <= c.rows; ++r)
    for (int col = 1; col <= c.cols; ++col) {
      const Cell& cell = inst.B.at(r, col);
      SchemeSymbol sym;
      sym.value = cell.value;
      if (cell.l) sym.l = comp_from_coord(c.scheme, *cell.l);
      if (cell.r) sym.r = comp_from_coord(c.scheme, *cell.r);
      if (cell.bcol) sym.b = std::array<int, 3>{0, *cell.bcol, 0};
      if (cell.bcell) sym.b = comp_from_coord(c.scheme, *cell.bcell);
      BitString w = std_encode_cell(sym, inst.C.at(r, col), c.scheme, &rng);
      scramble_cell(&w, c.scheme, rng);
      long long base =
          (static_cast<long long>(r - 1) * c.cols + (col - 1)) * c.scheme.cellbits;
      x.assign_range(base, w);
    }
  if (cert) *cert = inst.cert;
  return x;
}

int enc_ksum_eval(const KSumParams& p, int nblocks, const BitString& x) {
  if (x.size() != static_cast<std::size_t>(nblocks) * p.blockbits)
    throw std::invalid_argument("input length does not match the block layout");
  std::vector<std::optional<long long>> vals(nblocks);
  for (int i = 0; i < nblocks; ++i)
    vals[i] = ksum_decode_block(x.slice(static_cast<std::size_t>(i) * p.blockbits, p.blockbits), p);
  return ksum_subset_exists(vals, p);
}

int enc_block_ksum_eval(const KSumParams& p, int nblocks, const BitString& x) {
  if (x.size() != static_cast<std::size_t>(nblocks) * p.blockbits)
    throw std::invalid_argument("input length does not match the block layout");
  std::vector<std::optional<long long>> vals(nblocks);
  for (int i = 0; i < nblocks; ++i) {
    BitString blk = x.slice(static_cast<std::size_t>(i) * p.blockbits, p.blockbits);
    vals[i] = ksum_decode_block(blk, p);
    // A chosen block is always a valid encoding, whose fixed weight already
    // clears the density bar, so the bar binds only on undecodable blocks.
    if (!vals[i] && static_cast<int>(blk.weight()) < 6 * p.gadgets) return 0;
  }
  return ksum_subset_exists(vals, p);
}

long long f_qvsc_arity(long long b) {
  KSumParams p = KSumParams::make(b, KSumParams::make(b, 1).logb);
  long long level = b * p.blockbits;
  return level * level;
}

int f_qvsc_eval(long long b, const BitString& x) {
  KSumParams p = KSumParams::make(b, KSumParams::make(b, 1).logb);
  long long level = b * p.blockbits;
  if (static_cast<long long>(x.size()) != level * level)
    throw std::invalid_argument("input length does not match the composition");
  BitString outer(static_cast<std::size_t>(level));
  for (long long i = 0; i < level; ++i)
    if (enc_ksum_eval(p, static_cast<int>(b), x.slice(i * level, level))) outer.set(i, true);
  return enc_block_ksum_eval(p, static_cast<int>(b), outer);
}

FnPtr make_enc_ksum(long long b, int k, int nblocks) {
  auto fn = std::make_shared<EncKSumFn>();
  fn->p = KSumParams::make(b, k);
  fn->nblocks = nblocks;
  fn->dense_rest = false;
  if (nblocks < k) throw std::invalid_argument("need at least k blocks");
  return fn;
}

FnPtr make_enc_block_ksum(long long b, int k, int nblocks) {
  auto fn = std::make_shared<EncKSumFn>();
  fn->p = KSumParams::make(b, k);
  fn->nblocks = nblocks;
  fn->dense_rest = true;
  if (nblocks < k) throw std::invalid_argument("need at least k blocks");
  return fn;
}

bool validate_unambiguous(const FnPtr& f, const std::vector<Restriction>& U) {
  int a = f->arity();
  if (a > 16) throw std::invalid_argument("unambiguity validation is exhaustive; arity <= 16");
  for (const Restriction& p : U)
    for (const auto& fix : p)
      if (fix.first < 1 || fix.first > a || (fix.second != 0 && fix.second != 1))
        throw std::invalid_argument("restriction indices must be 1-based with 0/1 values");
  std::vector<std::uint8_t> bits(a);
  for (std::uint32_t mask = 0; mask < (1u << a); ++mask) {
    for (int i = 0; i < a; ++i) bits[i] = (mask >> i) & 1;
    int matches = 0;
    for (const Restriction& p : U) {
      bool ok = true;
      for (const auto& fix : p)
        if (bits[fix.first - 1] != fix.second) {
          ok = false;
          break;
        }
      if (ok) ++matches;
    }
    int fx = f->eval_bits(bits.data());
    // A zero input inside a restriction's subcube, a one input outside every
    // subcube, or a doubly covered input each break one of the conditions.
    if (fx == 0 && matches > 0) return false;
    if (fx == 1 && matches == 0) return false;
    if (matches > 1) return false;
  }
  return true;
}

FnPtr desensitize(const FnPtr& f, const std::vector<Restriction>& U) {
  if (!validate_unambiguous(f, U))
    throw std::invalid_argument("certificate collection is not unambiguous for this function");
  auto fn = std::make_shared<DesensitizedFn>();
  fn->f = f;
  fn->U = U;
  fn->base = f->arity();
  return fn;
}

FnPtr sensitivity_witness(const FnPtr& f, const std::vector<Restriction>& U) {
  FnPtr fdt = desensitize(f, U);
  std::size_t widest = 0;
  for (const Restriction& p : U) widest = std::max(widest, p.size());
  long long w = 3 * static_cast<long long>(widest);
  if (w < 1) throw std::invalid_argument("empty certificate collection");
  return compose(make_named("OR", {w}), fdt);
}

}  // namespace tbf
