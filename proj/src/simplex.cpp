#include "tbf/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace tbf {

namespace {

constexpr double kEps = 1e-9;

// Bland's rule pivoting on a tableau whose last row is the objective (reduced
// costs) and last column the right hand side. banned columns never enter.
void optimize(std::vector<std::vector<double>>& T, std::vector<int>& basis, int ncols,
              const std::vector<char>& banned) {
  int m = static_cast<int>(basis.size());
  for (long iter = 0; iter < 200000; ++iter) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (!banned[j] && T[m][j] < -kEps) {
        enter = j;
        break;
      }
    if (enter < 0) return;
    int leave = -1;
    double best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= kEps) continue;
      double ratio = T[i][ncols] / T[i][enter];
      if (leave < 0 || ratio < best_ratio - kEps ||
          (std::fabs(ratio - best_ratio) <= kEps && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("linear program is unbounded");
    double piv = T[leave][enter];
    for (int j = 0; j <= ncols; ++j) T[leave][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double factor = T[i][enter];
      if (std::fabs(factor) < 1e-14) continue;
      for (int j = 0; j <= ncols; ++j) T[i][j] -= factor * T[leave][j];
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("simplex iteration cap exceeded");
}

}  // namespace

std::optional<double> solve_lp_min(const LinearProgram& lp) {
  int m = static_cast<int>(lp.A.size());
  int n = lp.nvars;
  // sign-normalize rows so rhs >= 0; negated rows get artificials
  std::vector<char> negated(m, 0);
  int nart = 0;
  for (int i = 0; i < m; ++i)
    if (lp.b[i] < 0) {
      negated[i] = 1;
      ++nart;
    }
  int ncols = n + m + nart;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(ncols + 1, 0.0));
  std::vector<int> basis(m);
  int art = n + m;
  for (int i = 0; i < m; ++i) {
    double sgn = negated[i] ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) T[i][j] = sgn * lp.A[i][j];
    T[i][n + i] = sgn;  // slack
    T[i][ncols] = sgn * lp.b[i];
    if (negated[i]) {
      T[i][art] = 1.0;
      basis[i] = art;
      ++art;
    } else {
      basis[i] = n + i;
    }
  }
  std::vector<char> banned(ncols, 0);
  if (nart > 0) {
    // phase 1: minimize the artificial sum
    for (int j = n + m; j < ncols; ++j) T[m][j] = 1.0;
    for (int i = 0; i < m; ++i)
      if (basis[i] >= n + m)
        for (int j = 0; j <= ncols; ++j) T[m][j] -= T[i][j];
    optimize(T, basis, ncols, banned);
    double infeas = -T[m][ncols];
    if (infeas > 1e-7) return std::nullopt;
    for (int j = n + m; j < ncols; ++j) banned[j] = 1;  // never re-enter
  }
  // phase 2 objective from scratch
  for (int j = 0; j <= ncols; ++j) T[m][j] = 0.0;
  for (int j = 0; j < n; ++j) T[m][j] = lp.c[j];
  for (int i = 0; i < m; ++i) {
    int bj = basis[i];
    double cb = (bj < n) ? lp.c[bj] : 0.0;
    if (cb != 0.0)
      for (int j = 0; j <= ncols; ++j) T[m][j] -= cb * T[i][j];
  }
  optimize(T, basis, ncols, banned);
  double obj = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) obj += lp.c[basis[i]] * T[i][ncols];
  return obj;
}

}  // namespace tbf
