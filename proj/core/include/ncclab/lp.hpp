#pragma once

#include <cstddef>
#include <vector>

namespace ncclab {

// maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0 so the slack basis
// is feasible from the start. Dense rows; desk-scale problems only.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  std::size_t add_row(std::vector<double> coeffs, double bound);
};

enum class LPStatus { Optimal, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Optimal;
  double objective = 0.0;
  std::vector<double> x;
  std::vector<double> duals;  // one per row, >= 0 at optimum
  std::size_t iterations = 0;
  // max of primal infeasibility, dual infeasibility, complementary-slackness
  // violation and |primal - dual objective|
  double certificate_residual = 0.0;
};

// Dense tableau primal simplex with Bland's rule. Throws Errc::Infeasible if
// some rhs is negative.
LPResult solve_lp(const LinearProgram& lp, double pivot_tol = 1e-12);

}  // namespace ncclab
