#include "sos/lower_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sos/error.hpp"

namespace sos {

double single_machine_lower_bound(std::span<const VirtualJob> jobs) {
  if (jobs.empty()) return 0.0;
  return VirtualSchedule::build(jobs).surrogate_cost();
}

SubsetCheck subset_feasibility_check(std::span<const VirtualJob> jobs, std::span<const double> M,
                                     double tol) {
  const std::size_t n = jobs.size();
  if (n > 15) throw InvalidArgument("subset enumeration is limited to 15 jobs");
  if (M.size() != n) throw InvalidArgument("need one mean busy time per job");
  SubsetCheck out;
  out.slack = std::numeric_limits<double>::infinity();
  std::uint32_t worst = 0;
  double worst_scale = 1.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double lhs = 0.0, total = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (!(mask >> k & 1u)) continue;
      lhs += jobs[k].mean * M[k];
      total += jobs[k].mean;
      rmin = std::min(rmin, jobs[k].release);
    }
    const double rhs = total * (rmin + 0.5 * total);
    if (lhs - rhs < out.slack) {
      out.slack = lhs - rhs;
      worst = mask;
      worst_scale = std::max(1.0, std::abs(rhs));
    }
  }
  out.feasible = n == 0 || out.slack >= -tol * worst_scale;
  if (n == 0) out.slack = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (worst >> k & 1u) out.worst.push_back(jobs[k].id);
  }
  return out;
}

}  // namespace sos
