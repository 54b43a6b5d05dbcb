#include "sos/virtual_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

bool wspt_precedes(const VirtualJob& a, const VirtualJob& b) {
  const double ra = wspt_ratio(a.weight, a.mean);
  const double rb = wspt_ratio(b.weight, b.mean);
  if (ra != rb) return ra > rb;
  return a.id < b.id;
}

const VirtualJob& VirtualSchedule::job(int id) const { return jobs_[index(id)]; }

std::size_t VirtualSchedule::index(int id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw InvalidArgument("job " + std::to_string(id) + " is not in the virtual schedule");
  }
  return it->second;
}

void VirtualSchedule::reindex() {
  job_pieces_.assign(jobs_.size(), {});
  for (std::size_t p = 0; p < pieces_.size(); ++p) {
    job_pieces_[index_.at(pieces_[p].job)].push_back(p);
  }
}

void VirtualSchedule::insert(const VirtualJob& job) {
  if (!(std::isfinite(job.mean) && job.mean > 0.0)) {
    throw InvalidArgument("virtual job " + std::to_string(job.id) + " needs a positive mean");
  }
  if (!(std::isfinite(job.release) && job.release >= 0.0) || !(job.weight >= 0.0)) {
    throw InvalidArgument("virtual job " + std::to_string(job.id) + " has invalid data");
  }
  if (index_.count(job.id)) {
    throw ContractViolation("job " + std::to_string(job.id) + " inserted twice");
  }
  if (!jobs_.empty() && job.release < last_release_) {
    throw ContractViolation("out-of-order insertion: job " + std::to_string(job.id) +
                            " released before an earlier arrival");
  }
  const double r = job.release;

  // Cut at r. Everything that starts at or after r belongs to the tail that
  // is recomputed; a piece straddling r is split.
  std::vector<double> remaining(jobs_.size() + 1, 0.0);
  std::vector<Piece> kept;
  kept.reserve(pieces_.size() + 2);
  bool has_split = false;
  Piece split{};
  for (const auto& pc : pieces_) {
    if (pc.end <= r) {
      kept.push_back(pc);
    } else if (pc.start < r) {
      has_split = true;
      split = pc;
      const double rem = pc.remaining_at_start - (r - pc.start);
      remaining[index_.at(pc.job)] = rem > 0.0 ? rem : 0.0;
      kept.push_back({pc.job, pc.start, r, pc.remaining_at_start});
    } else {
      remaining[index_.at(pc.job)] = pc.remaining_at_start;
    }
  }

  index_.emplace(job.id, jobs_.size());
  jobs_.push_back(job);
  remaining[jobs_.size() - 1] = job.mean;
  last_release_ = r;

  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (remaining[k] > 0.0) active.push_back(k);
  }
  std::sort(active.begin(), active.end(), [&](std::size_t a, std::size_t b) {
    return wspt_precedes(jobs_[a], jobs_[b]);
  });

  double t = r;
  for (std::size_t pos = 0; pos < active.size(); ++pos) {
    const std::size_t k = active[pos];
    if (pos == 0 && has_split && split.job == jobs_[k].id) {
      // The interrupted job keeps running: undo the split.
      kept.back() = split;
      t = split.end;
      continue;
    }
    const double rem = remaining[k];
    kept.push_back({jobs_[k].id, t, t + rem, rem});
    t += rem;
  }
  pieces_ = std::move(kept);
  reindex();
}

VirtualSchedule VirtualSchedule::build(std::span<const VirtualJob> input) {
  VirtualSchedule vs;
  std::vector<VirtualJob> jobs(input.begin(), input.end());
  std::stable_sort(jobs.begin(), jobs.end(), [](const VirtualJob& a, const VirtualJob& b) {
    if (a.release != b.release) return a.release < b.release;
    return a.id < b.id;
  });
  for (const auto& j : jobs) {
    if (!(std::isfinite(j.mean) && j.mean > 0.0)) {
      throw InvalidArgument("virtual job " + std::to_string(j.id) + " needs a positive mean");
    }
    if (!vs.index_.emplace(j.id, vs.jobs_.size()).second) {
      throw ContractViolation("job " + std::to_string(j.id) + " inserted twice");
    }
    vs.jobs_.push_back(j);
  }
  if (!jobs.empty()) vs.last_release_ = jobs.back().release;

  const std::size_t n = jobs.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> remaining(n);
  for (std::size_t k = 0; k < n; ++k) remaining[k] = jobs[k].mean;
  std::vector<std::size_t> available;
  std::size_t next = 0;
  double t = 0.0;

  auto release_up_to = [&](double time) {
    while (next < n && jobs[next].release <= time) available.push_back(next++);
  };
  auto top = [&]() {
    return *std::min_element(available.begin(), available.end(), [&](std::size_t a, std::size_t b) {
      return wspt_precedes(jobs[a], jobs[b]);
    });
  };

  while (next < n || !available.empty()) {
    if (available.empty()) {
      t = std::max(t, jobs[next].release);
      release_up_to(t);
      continue;
    }
    const std::size_t k = top();
    Piece open{jobs[k].id, t, 0.0, remaining[k]};
    for (;;) {
      const double finish = open.start + open.remaining_at_start;
      const double next_release = next < n ? jobs[next].release : inf;
      if (next_release < finish) {
        release_up_to(next_release);
        if (top() == k) continue;
        open.end = next_release;
        remaining[k] = open.remaining_at_start - (next_release - open.start);
        t = next_release;
        break;
      }
      open.end = finish;
      remaining[k] = 0.0;
      available.erase(std::find(available.begin(), available.end(), k));
      t = finish;
      release_up_to(t);
      break;
    }
    if (open.end > open.start) vs.pieces_.push_back(open);
  }
  vs.reindex();
  return vs;
}

double VirtualSchedule::alpha_point(int id, double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  const std::size_t k = index(id);
  const auto& list = job_pieces_[k];
  if (list.empty()) throw InvalidArgument("job " + std::to_string(id) + " has no processing");
  const double target = alpha * jobs_[k].mean;
  double done = 0.0;
  for (std::size_t p : list) {
    const auto& pc = pieces_[p];
    const double len = pc.end - pc.start;
    if (done + len >= target) return pc.start + (target - done);
    done += len;
  }
  return pieces_[list.back()].end;
}

double VirtualSchedule::start_time(int id) const {
  const auto& list = job_pieces_[index(id)];
  return list.empty() ? 0.0 : pieces_[list.front()].start;
}

double VirtualSchedule::completion_time(int id) const {
  const auto& list = job_pieces_[index(id)];
  return list.empty() ? 0.0 : pieces_[list.back()].end;
}

double VirtualSchedule::mean_busy_time(int id) const {
  const std::size_t k = index(id);
  double acc = 0.0;
  for (std::size_t p : job_pieces_[k]) {
    const auto& pc = pieces_[p];
    acc += 0.5 * (pc.end * pc.end - pc.start * pc.start);
  }
  return acc / jobs_[k].mean;
}

double VirtualSchedule::processed_fraction_before(int id, double t) const {
  auto it = index_.find(id);
  if (it == index_.end()) return 0.0;
  double done = 0.0;
  for (std::size_t p : job_pieces_[it->second]) {
    const auto& pc = pieces_[p];
    if (pc.start >= t) break;
    done += std::min(pc.end, t) - pc.start;
  }
  return std::clamp(done / jobs_[it->second].mean, 0.0, 1.0);
}

double VirtualSchedule::remaining_fraction(int id, double t) const {
  return 1.0 - processed_fraction_before(id, t);
}

double VirtualSchedule::surrogate_cost() const {
  double total = 0.0;
  for (const auto& j : jobs_) total += j.weight * (mean_busy_time(j.id) + 0.5 * j.mean);
  return total;
}

double VirtualSchedule::weighted_mean_busy_time() const {
  double total = 0.0;
  for (const auto& j : jobs_) total += j.weight * mean_busy_time(j.id);
  return total;
}

std::vector<int> VirtualSchedule::priority_order() const {
  std::vector<VirtualJob> sorted = jobs_;
  std::sort(sorted.begin(), sorted.end(), wspt_precedes);
  std::vector<int> ids;
  for (const auto& j : sorted) ids.push_back(j.id);
  return ids;
}

std::vector<std::vector<int>> VirtualSchedule::canonical_decomposition(std::size_t k) const {
  if (k < 1 || k > jobs_.size()) throw InvalidArgument("prefix length out of range");
  std::vector<VirtualJob> sorted = jobs_;
  std::sort(sorted.begin(), sorted.end(), wspt_precedes);
  sorted.resize(k);
  const auto sub = build(sorted);

  std::vector<std::vector<int>> blocks;
  double block_end = -1.0;
  for (const auto& pc : sub.pieces()) {
    if (blocks.empty() || pc.start > block_end) blocks.emplace_back();
    auto& b = blocks.back();
    if (std::find(b.begin(), b.end(), pc.job) == b.end()) b.push_back(pc.job);
    block_end = std::max(block_end, pc.end);
  }
  return blocks;
}

std::string VirtualSchedule::dump() const {
  std::ostringstream os;
  os.precision(12);
  for (const auto& pc : pieces_) os << "(" << pc.job << ", " << pc.start << ", " << pc.end << ")\n";
  return os.str();
}

}  // namespace sos
