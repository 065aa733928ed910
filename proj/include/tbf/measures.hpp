// Exact complexity measures of Boolean functions given as truth tables.
// Every routine is exact (the spectral one up to the stated tolerance);
// arity caps keep the exhaustive searches inside fixed budgets.
#pragma once

#include <optional>

#include "tbf/truthtable.hpp"

namespace tbf {

// Deterministic decision-tree depth. Minimax over variable queries, memoized
// on ternary restriction keys. arity <= 14.
int deterministic_qc(const TruthTable& f);

struct SensitivityResult {
  int s = 0, s0 = 0, s1 = 0;
};
// Max number of sensitive bits over all inputs; s0/s1 restrict to f(x)=0/1.
// arity <= 24.
SensitivityResult sensitivity(const TruthTable& f);

// Max number of pairwise disjoint sensitive blocks over all inputs. Exact
// branch-and-bound packing. arity <= 16.
int block_sensitivity(const TruthTable& f);

struct CertificateResult {
  int C = 0, C0 = 0, C1 = 0;
};
// Smallest forcing variable subset, maximized over inputs. arity <= 12.
CertificateResult certificate_complexity(const TruthTable& f);

// Degree of the unique multilinear polynomial over the rationals (computed in
// exact integers via a Mobius transform). arity <= 24.
int degree(const TruthTable& f);

// Largest eigenvalue of the sensitivity-graph adjacency matrix, computed by
// power iteration on A+I (all-ones start) and shifted back. arity <= 20.
// Throws std::runtime_error if the iteration does not converge.
double spectral_sensitivity(const TruthTable& f, double tol = 1e-9, long max_iter = 100000);

// Least degree admitting a polynomial with max deviation <= eps on {0,1}^n.
// Dense two-phase simplex; feasibility margin 1e-7. arity <= 8.
int approx_degree(const TruthTable& f, double eps = 1.0 / 3.0);

struct MeasureSelection {
  bool D = true, s = true, bs = true, C = true, deg = true, lambda = true, adeg = true;
  static MeasureSelection all() { return {}; }
  static MeasureSelection none();
};

struct MeasureReport {
  int arity = 0;
  std::optional<int> D, s, s0, s1, bs, C, C0, C1, deg, adeg;
  std::optional<double> lambda;
};

// Computes the selected measures, silently skipping any whose arity cap is
// exceeded.
MeasureReport measure_report(const TruthTable& f,
                             const MeasureSelection& sel = MeasureSelection::all());

}  // namespace tbf
