#include "tbf/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "tbf/simplex.hpp"

namespace tbf {

namespace {

void check_cap(const TruthTable& f, int cap, const char* what) {
  if (f.arity > cap)
    throw std::invalid_argument(std::string(what) + " arity cap is " + std::to_string(cap));
  if (f.rows.size() != (std::size_t(1) << f.arity)) throw std::invalid_argument("bad truth table");
}

}  // namespace

// --- decision-tree depth -----------------------------------------------------

namespace {

struct DepthSolver {
  const TruthTable& f;
  int n;
  std::unordered_map<std::uint32_t, std::int8_t> memo;

  // assigned/value masks; free variables are the unassigned ones
  bool constant_on(std::uint32_t assigned, std::uint32_t value) const {
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::uint32_t freem = full & ~assigned;
    int first = f.rows[value];
    // iterate submasks of freem
    std::uint32_t sub = freem;
    while (true) {
      if (f.rows[value | sub] != first) return false;
      if (sub == 0) break;
      sub = (sub - 1) & freem;
    }
    return true;
  }

  int depth(std::uint32_t assigned, std::uint32_t value) {
    std::uint32_t key = (assigned << n) | value;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int best;
    if (constant_on(assigned, value)) {
      best = 0;
    } else {
      best = n + 1;
      for (int i = 0; i < n; ++i) {
        std::uint32_t bit = 1u << i;
        if (assigned & bit) continue;
        int d0 = depth(assigned | bit, value);
        if (d0 + 1 >= best) continue;
        int d1 = depth(assigned | bit, value | bit);
        best = std::min(best, 1 + std::max(d0, d1));
        if (best == 1) break;
      }
    }
    memo[key] = static_cast<std::int8_t>(best);
    return best;
  }
};

}  // namespace

int deterministic_qc(const TruthTable& f) {
  check_cap(f, 14, "deterministic_qc");
  DepthSolver solver{f, f.arity, {}};
  return solver.depth(0, 0);
}

// --- sensitivity -------------------------------------------------------------

SensitivityResult sensitivity(const TruthTable& f) {
  check_cap(f, 24, "sensitivity");
  SensitivityResult out;
  std::size_t size = f.rows.size();
  for (std::size_t x = 0; x < size; ++x) {
    int v = f.rows[x];
    int cnt = 0;
    for (int i = 0; i < f.arity; ++i)
      if (f.rows[x ^ (std::size_t(1) << i)] != v) ++cnt;
    out.s = std::max(out.s, cnt);
    if (v)
      out.s1 = std::max(out.s1, cnt);
    else
      out.s0 = std::max(out.s0, cnt);
  }
  return out;
}

// --- block sensitivity -------------------------------------------------------

namespace {

struct PackSolver {
  const std::vector<std::uint8_t>& rows;
  int n;
  std::uint32_t x;
  int fx;
  int best;  // best packing found for this input

  bool sens(std::uint32_t block) const { return rows[x ^ block] != fx; }

  // packs blocks of size >= 2 inside free (no sensitive singletons inside)
  void bnb(std::uint32_t freem, int curr) {
    best = std::max(best, curr);
    int fc = __builtin_popcount(freem);
    if (curr + fc / 2 <= best) return;
    std::uint32_t e = freem & (~freem + 1);  // lowest free bit as pivot
    // blocks that avoid the pivot entirely
    bnb(freem & ~e, curr);
    if (curr + 1 + (fc - 2) / 2 <= best) return;
    // blocks containing the pivot, smallest first; kept blocks form an
    // antichain (supersets of an already tried block cannot do better)
    std::uint32_t rest = freem & ~e;
    std::vector<std::uint32_t> kept;
    int rc = fc - 1;
    for (int t = 1; t <= rc; ++t) {
      if (curr + 1 + (fc - 1 - t) / 2 <= best) break;
      // all t-subsets of rest via Gosper over its bit list
      std::vector<int> bits;
      for (std::uint32_t m = rest; m; m &= m - 1) bits.push_back(__builtin_ctz(m));
      std::vector<int> idx(t);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::uint32_t sub = 0;
        for (int b : idx) sub |= 1u << bits[b];
        std::uint32_t block = sub | e;
        bool dominated = false;
        for (std::uint32_t kb : kept)
          if ((kb & block) == kb) {
            dominated = true;
            break;
          }
        if (!dominated && sens(block)) {
          kept.push_back(block);
          bnb(freem & ~block, curr + 1);
          if (curr + 1 + (fc - 1 - t) / 2 <= best) return;
        }
        // next combination
        int i = t - 1;
        while (i >= 0 && idx[i] == rc - t + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
};

}  // namespace

int block_sensitivity(const TruthTable& f) {
  check_cap(f, 16, "block_sensitivity");
  int n = f.arity;
  std::size_t size = f.rows.size();
  // sensitive singleton counts give the starting bound and the search order
  std::vector<std::uint8_t> sing(size);
  int best = 0;
  for (std::size_t x = 0; x < size; ++x) {
    int cnt = 0;
    for (int i = 0; i < n; ++i)
      if (f.rows[x ^ (std::size_t(1) << i)] != f.rows[x]) ++cnt;
    sing[x] = static_cast<std::uint8_t>(cnt);
    best = std::max(best, cnt);
  }
  std::vector<std::uint32_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  auto ub = [&](std::uint32_t x) { return sing[x] + (n - sing[x]) / 2; };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return ub(a) > ub(b); });
  for (std::uint32_t x : order) {
    if (ub(x) <= best) break;  // sorted, nothing later can improve
    // big blocks never contain a sensitive singleton
    std::uint32_t singles = 0;
    for (int i = 0; i < n; ++i)
      if (f.rows[x ^ (std::uint32_t(1) << i)] != f.rows[x]) singles |= 1u << i;
    std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    PackSolver ps{f.rows, n, x, f.rows[x], 0};
    ps.best = std::max(0, best - sing[x]);  // only improvements matter
    ps.bnb(full & ~singles, 0);
    best = std::max(best, sing[x] + ps.best);
  }
  return best;
}

// --- certificate complexity --------------------------------------------------

namespace {

// is f constant when the variables in S are pinned to x's values?
bool forces(const TruthTable& f, std::uint32_t x, std::uint32_t S, std::uint32_t full) {
  std::uint32_t freem = full & ~S;
  std::uint32_t base = x & S;
  int first = f.rows[base | (x & freem)];
  std::uint32_t sub = freem;
  while (true) {
    if (f.rows[base | sub] != first) return false;
    if (sub == 0) break;
    sub = (sub - 1) & freem;
  }
  return true;
}

}  // namespace

CertificateResult certificate_complexity(const TruthTable& f) {
  check_cap(f, 12, "certificate_complexity");
  int n = f.arity;
  std::uint32_t full = (1u << n) - 1;
  CertificateResult out;
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    int cx = n;
    if (forces(f, x, 0, full)) {
      cx = 0;
    } else {
      bool done = false;
      for (int t = 1; t <= n && !done; ++t) {
        // all subsets of size t (Gosper's hack)
        std::uint32_t S = (1u << t) - 1;
        while (S <= full) {
          if (forces(f, x, S, full)) {
            cx = t;
            done = true;
            break;
          }
          std::uint32_t c = S & -S, r = S + c;
          S = (((r ^ S) >> 2) / c) | r;
          if (c == 0) break;
        }
      }
    }
    out.C = std::max(out.C, cx);
    if (f.rows[x])
      out.C1 = std::max(out.C1, cx);
    else
      out.C0 = std::max(out.C0, cx);
  }
  return out;
}

// --- degree ------------------------------------------------------------------

int degree(const TruthTable& f) {
  check_cap(f, 24, "degree");
  int n = f.arity;
  std::vector<std::int32_t> c(f.rows.begin(), f.rows.end());
  for (int i = 0; i < n; ++i) {
    std::size_t bit = std::size_t(1) << i;
    for (std::size_t S = 0; S < c.size(); ++S)
      if (S & bit) c[S] -= c[S ^ bit];
  }
  int deg = 0;
  for (std::size_t S = 0; S < c.size(); ++S)
    if (c[S] != 0) deg = std::max(deg, __builtin_popcountll(S));
  return deg;
}

// --- spectral sensitivity ----------------------------------------------------

double spectral_sensitivity(const TruthTable& f, double tol, long max_iter) {
  check_cap(f, 20, "spectral_sensitivity");
  int n = f.arity;
  std::size_t size = f.rows.size();
  // neighbor masks of sensitive directions per vertex
  std::vector<std::uint32_t> sens(size, 0);
  bool any = false;
  for (std::size_t x = 0; x < size; ++x) {
    std::uint32_t m = 0;
    for (int i = 0; i < n; ++i)
      if (f.rows[x ^ (std::size_t(1) << i)] != f.rows[x]) m |= 1u << i;
    sens[x] = m;
    any = any || m;
  }
  if (!any) return 0.0;
  std::vector<double> v(size, 1.0), w(size);
  double prev = -1.0;
  for (long it = 0; it < max_iter; ++it) {
    // w = (A + I) v
    for (std::size_t x = 0; x < size; ++x) {
      double acc = v[x];
      std::uint32_t m = sens[x];
      while (m) {
        int i = __builtin_ctz(m);
        m &= m - 1;
        acc += v[x ^ (std::size_t(1) << i)];
      }
      w[x] = acc;
    }
    double num = 0, den = 0;
    for (std::size_t x = 0; x < size; ++x) {
      num += v[x] * w[x];
      den += v[x] * v[x];
    }
    double est = num / den;
    double norm = 0;
    for (double t : w) norm += t * t;
    norm = std::sqrt(norm);
    for (std::size_t x = 0; x < size; ++x) v[x] = w[x] / norm;
    if (prev >= 0 && std::fabs(est - prev) < tol) return est - 1.0;
    prev = est;
  }
  throw std::runtime_error("spectral_sensitivity did not converge");
}

// --- approximate degree ------------------------------------------------------

namespace {

// least max deviation of a degree-d polynomial from f; monomials indexed by
// subsets of size <= d
double min_deviation(const TruthTable& f, int d) {
  int n = f.arity;
  std::vector<std::uint32_t> monos;
  for (std::uint32_t S = 0; S < (1u << n); ++S)
    if (__builtin_popcount(S) <= d) monos.push_back(S);
  std::size_t nm = monos.size();
  // variables: c_S split in +/- parts, then t
  LinearProgram lp;
  lp.nvars = static_cast<int>(2 * nm + 1);
  int tvar = static_cast<int>(2 * nm);
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    std::vector<double> row(lp.nvars, 0.0);
    for (std::size_t j = 0; j < nm; ++j) {
      double m = ((monos[j] & x) == monos[j]) ? 1.0 : 0.0;
      row[2 * j] = m;
      row[2 * j + 1] = -m;
    }
    row[tvar] = -1.0;
    std::vector<double> neg(row);
    for (auto& vv : neg) vv = -vv;
    neg[tvar] = -1.0;
    lp.A.push_back(row);
    lp.b.push_back(f.rows[x]);
    lp.A.push_back(neg);
    lp.b.push_back(-static_cast<double>(f.rows[x]));
  }
  lp.c.assign(lp.nvars, 0.0);
  lp.c[tvar] = 1.0;
  auto opt = solve_lp_min(lp);
  if (!opt) throw std::runtime_error("deviation program infeasible");
  return *opt;
}

}  // namespace

int approx_degree(const TruthTable& f, double eps) {
  check_cap(f, 8, "approx_degree");
  const double margin = 1e-7;
  for (int d = 0; d <= f.arity; ++d)
    if (min_deviation(f, d) <= eps + margin) return d;
  return f.arity;
}

// --- report ------------------------------------------------------------------

MeasureSelection MeasureSelection::none() {
  MeasureSelection m;
  m.D = m.s = m.bs = m.C = m.deg = m.lambda = m.adeg = false;
  return m;
}

MeasureReport measure_report(const TruthTable& f, const MeasureSelection& sel) {
  MeasureReport rep;
  rep.arity = f.arity;
  if (sel.D && f.arity <= 14) rep.D = deterministic_qc(f);
  if (sel.s && f.arity <= 24) {
    auto r = sensitivity(f);
    rep.s = r.s;
    rep.s0 = r.s0;
    rep.s1 = r.s1;
  }
  if (sel.bs && f.arity <= 16) rep.bs = block_sensitivity(f);
  if (sel.C && f.arity <= 12) {
    auto r = certificate_complexity(f);
    rep.C = r.C;
    rep.C0 = r.C0;
    rep.C1 = r.C1;
  }
  if (sel.deg && f.arity <= 24) rep.deg = degree(f);
  if (sel.lambda && f.arity <= 20) rep.lambda = spectral_sensitivity(f);
  if (sel.adeg && f.arity <= 8) rep.adeg = approx_degree(f);
  return rep;
}

}  // namespace tbf
