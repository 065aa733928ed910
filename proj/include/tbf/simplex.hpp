// Minimal dense two-phase simplex for small linear programs:
//   minimize c.z  subject to  A z <= b,  z >= 0.
// Bland's rule, so it terminates; sized for a few hundred rows/columns.
#pragma once

#include <optional>
#include <vector>

namespace tbf {

struct LinearProgram {
  int nvars = 0;
  std::vector<std::vector<double>> A;  // rows of coefficients, each size nvars
  std::vector<double> b;
  std::vector<double> c;
};

// Returns the optimal objective value, or nullopt if infeasible. Unbounded
// programs throw std::runtime_error (callers here never build one).
std::optional<double> solve_lp_min(const LinearProgram& lp);

}  // namespace tbf
