#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sos/instance.hpp"
#include "sos/virtual_schedule.hpp"

namespace sos {

/// Increase of the machine's surrogate cost sum w (M + mean / 2) if `job`
/// were inserted now, from the closed-form expression over remaining
/// fractions at the job's release.
double assignment_cost(const VirtualSchedule& vs, const VirtualJob& job);

/// One machine's virtual schedule plus its running surrogate cost.
class MachineState {
 public:
  explicit MachineState(std::size_t machine) : machine_(machine) {}

  std::size_t machine() const noexcept { return machine_; }
  const VirtualSchedule& schedule() const noexcept { return vs_; }
  double surrogate() const noexcept { return surrogate_; }

  double cost(const VirtualJob& job) const;
  /// Inserts the job and adds `cost` to the running surrogate.
  void assign(const VirtualJob& job, double cost);

 private:
  std::size_t machine_;
  VirtualSchedule vs_;
  double surrogate_ = 0.0;
};

struct DispatchStep {
  int job_id;
  std::size_t job_index;
  std::vector<double> cost;  // per machine
  std::size_t chosen;
};

/// Result of the greedy immediate-dispatch rule. It only looks at means, so
/// it is the same for every realization.
struct Assignment {
  std::vector<std::size_t> machine_of;  // by job index
  std::vector<MachineState> machines;
  std::vector<DispatchStep> trace;      // in dispatch order

  /// sum_j w_j (M_j + mean_j / 2) over the final virtual schedules.
  double surrogate_total() const;
  /// sum of the chosen costs, in dispatch order.
  double cost_sum() const;
};

/// Dispatches every job at its release (ascending id among equal releases)
/// to a machine of least cost, ties to the lowest machine index.
Assignment greedy_assign(const Instance& inst);

/// Long-format CSV: job_id,machine,cost,chosen; one row per job and machine.
/// Machines are numbered from 0.
std::string assignment_trace_csv(const Assignment& a);

}  // namespace sos
