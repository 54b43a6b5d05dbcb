#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sos/virtual_schedule.hpp"

namespace sos {

/// sum_j w_j (M_j + mean_j / 2) of the preemptive WSPT schedule of the
/// deterministic counterparts: a lower bound on any non-anticipative
/// single-machine policy.
double single_machine_lower_bound(std::span<const VirtualJob> jobs);

struct SubsetCheck {
  bool feasible = true;
  double slack = 0.0;       // min over subsets of lhs - rhs
  std::vector<int> worst;   // ids of the tightest subset
};

/// Exhaustive check of sum_S mean M >= sum_S mean (r_min(S) + sum_S mean / 2)
/// over all nonempty subsets S. M[k] belongs to jobs[k]. n <= 15.
SubsetCheck subset_feasibility_check(std::span<const VirtualJob> jobs, std::span<const double> M,
                                     double tol = 1e-9);

}  // namespace sos
