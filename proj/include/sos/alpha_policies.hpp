#pragma once

#include <span>
#include <vector>

#include "sos/virtual_schedule.hpp"

namespace sos {

/// One job of a non-preemptive realized schedule.
struct ScheduledJob {
  int job;
  double alpha;
  double alpha_point;
  double start;
  double completion;
  double p;  // realized processing time
};

/// Per machine, jobs in processing order.
struct RealizedSchedule {
  std::vector<std::vector<ScheduledJob>> machines;
};

/// SOS(A) on one machine. alpha[k] and p[k] belong to vs.jobs()[k]. Jobs run
/// in increasing alpha-point order (ties by id), each as early as possible
/// after its alpha-point.
std::vector<ScheduledJob> sos_schedule(const VirtualSchedule& vs, std::span<const double> alpha,
                                       std::span<const double> p);

}  // namespace sos
