#include "ncclab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ncclab/error.hpp"

namespace ncclab {

std::size_t LinearProgram::add_row(std::vector<double> coeffs, double bound) {
  coeffs.resize(num_vars, 0.0);
  rows.push_back(std::move(coeffs));
  rhs.push_back(bound);
  return rows.size() - 1;
}

LPResult solve_lp(const LinearProgram& lp, double pivot_tol) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  const std::size_t cols = n + m + 1;  // structural, slack, rhs
  for (double b : lp.rhs) {
    if (b < 0) throw Error(Errc::Infeasible, "negative right-hand side");
  }

  // rows 0..m-1 constraints, row m objective (stores -c, reduced costs)
  std::vector<double> tab((m + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return tab[r * cols + c]; };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) at(r, c) = lp.rows[r][c];
    at(r, n + r) = 1.0;
    at(r, cols - 1) = lp.rhs[r];
  }
  for (std::size_t c = 0; c < n; ++c) at(m, c) = -lp.objective.at(c);

  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  LPResult result;
  for (;;) {
    // Bland: lowest-index improving column
    std::size_t enter = cols;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (at(m, c) < -pivot_tol) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a > pivot_tol) {
        const double ratio = std::max(0.0, at(r, cols - 1)) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave < m && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) {
      result.status = LPStatus::Unbounded;
      result.iterations++;
      return result;
    }

    const double pivot = at(leave, enter);
    for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= factor * at(leave, c);
      at(r, enter) = 0.0;
    }
    basis[leave] = enter;
    ++result.iterations;
  }

  result.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) result.x[basis[r]] = std::max(0.0, at(r, cols - 1));
  }
  result.duals.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) result.duals[r] = at(m, n + r);
  result.objective = at(m, cols - 1);

  // Certificate from the original data.
  double residual = 0.0;
  double primal = 0.0;
  for (std::size_t c = 0; c < n; ++c) primal += lp.objective[c] * result.x[c];
  double dual = 0.0;
  std::vector<double> aty(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double ax = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      ax += lp.rows[r][c] * result.x[c];
      aty[c] += lp.rows[r][c] * result.duals[r];
    }
    const double slack = lp.rhs[r] - ax;
    residual = std::max(residual, -slack);
    residual = std::max(residual, -result.duals[r]);
    residual = std::max(residual, std::abs(result.duals[r] * slack));
    dual += lp.rhs[r] * result.duals[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    const double reduced = aty[c] - lp.objective[c];
    residual = std::max(residual, -reduced);
    residual = std::max(residual, std::abs(result.x[c] * reduced));
  }
  residual = std::max(residual, std::abs(primal - dual));
  result.certificate_residual = residual;
  result.objective = primal;
  return result;
}

}  // namespace ncclab
