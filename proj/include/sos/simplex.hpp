#pragma once

#include <cstddef>
#include <vector>

namespace sos {

/// min c'x  s.t.  A x (= or <=) b,  x >= 0,  with b >= 0 and A stored by
/// sparse columns.
struct LpProblem {
  struct Entry {
    std::size_t row;
    double value;
  };

  std::vector<double> rhs;
  std::vector<bool> equality;               // per row; false means <=
  std::vector<std::vector<Entry>> columns;
  std::vector<double> cost;

  std::size_t rows() const noexcept { return rhs.size(); }
};

struct LpResult {
  double objective = 0.0;
  double dual_objective = 0.0;
  std::vector<double> x;      // structural columns
  std::vector<double> duals;  // per row; <= rows have duals <= 0
  std::size_t iterations = 0;
  double primal_residual = 0.0;  // max constraint violation
  double min_reduced_cost = 0.0;
};

/// Two-phase revised simplex with a dense basis inverse. Small models only
/// (a few thousand rows). The result is checked before returning: primal
/// feasibility, dual feasibility and a matching dual objective, otherwise a
/// NumericalError is thrown.
LpResult solve_lp(const LpProblem& lp);

}  // namespace sos
