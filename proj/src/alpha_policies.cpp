#include "sos/alpha_policies.hpp"

#include <algorithm>
#include <cmath>

#include "sos/error.hpp"

namespace sos {

std::vector<ScheduledJob> sos_schedule(const VirtualSchedule& vs, std::span<const double> alpha,
                                       std::span<const double> p) {
  const auto& jobs = vs.jobs();
  if (alpha.size() != jobs.size() || p.size() != jobs.size()) {
    throw InvalidArgument("need one alpha and one processing time per job");
  }
  std::vector<ScheduledJob> out;
  out.reserve(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (!(p[k] >= 0.0) || !std::isfinite(p[k])) {
      throw InvalidArgument("realized processing time of job " + std::to_string(jobs[k].id) +
                            " is invalid");
    }
    out.push_back({jobs[k].id, alpha[k], vs.alpha_point(jobs[k].id, alpha[k]), 0.0, 0.0, p[k]});
  }
  std::sort(out.begin(), out.end(), [](const ScheduledJob& a, const ScheduledJob& b) {
    if (a.alpha_point != b.alpha_point) return a.alpha_point < b.alpha_point;
    return a.job < b.job;
  });
  double t = 0.0;
  for (auto& e : out) {
    e.start = std::max(e.alpha_point, t);
    e.completion = e.start + e.p;
    t = e.completion;
  }
  return out;
}

}  // namespace sos
