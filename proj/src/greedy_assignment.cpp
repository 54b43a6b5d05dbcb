#include "sos/greedy_assignment.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

double assignment_cost(const VirtualSchedule& vs, const VirtualJob& job) {
  if (vs.size() > 0 && job.release < vs.last_release()) {
    throw ContractViolation("job " + std::to_string(job.id) +
                            " costed before an earlier-released arrival was processed");
  }
  const double r = job.release;
  const double ratio = wspt_ratio(job.weight, job.mean);
  double ahead = 0.0;   // remaining work that runs before the job
  double behind = 0.0;  // weight-scaled remaining fractions pushed back
  for (const auto& k : vs.jobs()) {
    const double iota = vs.remaining_fraction(k.id, r);
    if (iota <= 0.0) continue;
    if (wspt_ratio(k.weight, k.mean) >= ratio) {
      ahead += iota * k.mean;
    } else {
      behind += k.weight * iota;
    }
  }
  return job.weight * (r + job.mean + ahead) + behind * job.mean;
}

double MachineState::cost(const VirtualJob& job) const { return assignment_cost(vs_, job); }

void MachineState::assign(const VirtualJob& job, double cost) {
  vs_.insert(job);
  surrogate_ += cost;
#ifndef NDEBUG
  const double fresh = vs_.surrogate_cost();
  assert(std::abs(fresh - surrogate_) <= 1e-9 * std::max(1.0, std::abs(fresh)));
#endif
}

double Assignment::surrogate_total() const {
  double total = 0.0;
  for (const auto& m : machines) total += m.schedule().surrogate_cost();
  return total;
}

double Assignment::cost_sum() const {
  double total = 0.0;
  for (const auto& s : trace) total += s.cost[s.chosen];
  return total;
}

Assignment greedy_assign(const Instance& inst) {
  Assignment a;
  a.machine_of.assign(inst.size(), 0);
  for (std::size_t i = 0; i < inst.machines(); ++i) a.machines.emplace_back(i);

  for (std::size_t j : inst.release_order()) {
    const auto& job = inst.job(j);
    DispatchStep step{job.id, j, {}, 0};
    for (std::size_t i = 0; i < inst.machines(); ++i) {
      step.cost.push_back(a.machines[i].cost({job.id, job.weight, job.release, inst.mean(i, j)}));
      if (step.cost[i] < step.cost[step.chosen]) step.chosen = i;
    }
    const std::size_t i = step.chosen;
    a.machines[i].assign({job.id, job.weight, job.release, inst.mean(i, j)}, step.cost[i]);
    a.machine_of[j] = i;
    a.trace.push_back(std::move(step));
  }
  return a;
}

std::string assignment_trace_csv(const Assignment& a) {
  std::ostringstream os;
  os.precision(12);
  os << "job_id,machine,cost,chosen\n";
  for (const auto& s : a.trace) {
    for (std::size_t i = 0; i < s.cost.size(); ++i) {
      os << s.job_id << ',' << i << ',' << s.cost[i] << ',' << (i == s.chosen ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

}  // namespace sos
