// Random instance builders and brute-force oracles shared by the test suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "sos/instance.hpp"
#include "sos/random.hpp"
#include "sos/virtual_schedule.hpp"

namespace sos::test {

inline constexpr double kPhi = 1.6180339887498948482;

// Integer data so unit-step simulation is exact.
inline std::vector<VirtualJob> random_integer_jobs(Stream& s, std::size_t n, int max_release = 20,
                                                   int max_mean = 8, int max_weight = 9) {
  std::vector<VirtualJob> jobs;
  for (std::size_t k = 0; k < n; ++k) {
    jobs.push_back({static_cast<int>(k + 1), static_cast<double>(s.uniform_int(1, max_weight)),
                    static_cast<double>(s.uniform_int(0, max_release)),
                    static_cast<double>(s.uniform_int(1, max_mean))});
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.release < b.release; });
  return jobs;
}

inline std::vector<VirtualJob> random_real_jobs(Stream& s, std::size_t n) {
  std::vector<VirtualJob> jobs;
  for (std::size_t k = 0; k < n; ++k) {
    jobs.push_back({static_cast<int>(k + 1), s.uniform(0.1, 10.0), s.uniform(0.0, 15.0), s.uniform(0.2, 6.0)});
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.release < b.release; });
  return jobs;
}

struct UnitStepResult {
  std::vector<double> completion;  // by input index
  std::vector<double> mean_busy;
};

// Preemptive WSPT by unit time steps. Exact when releases and means are integers.
inline UnitStepResult unit_step_wspt(const std::vector<VirtualJob>& jobs) {
  const std::size_t n = jobs.size();
  std::vector<double> left(n);
  for (std::size_t k = 0; k < n; ++k) left[k] = jobs[k].mean;
  UnitStepResult out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  std::size_t done = 0;
  for (long t = 0; done < n; ++t) {
    std::size_t best = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (left[k] <= 0.0 || jobs[k].release > static_cast<double>(t)) continue;
      if (best == n || wspt_precedes(jobs[k], jobs[best])) best = k;
    }
    if (best == n) continue;
    left[best] -= 1.0;
    out.mean_busy[best] += (static_cast<double>(t) + 0.5) / jobs[best].mean;
    if (left[best] <= 0.0) {
      out.completion[best] = static_cast<double>(t + 1);
      ++done;
    }
  }
  return out;
}

// Mixed deterministic / uniform / exponential / two-point instance.
inline Instance mixed_instance(std::uint64_t seed, std::size_t n, std::size_t m, bool integer_times = false) {
  Stream s(seed, 0, StreamPurpose::generator, 0xabc);
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = integer_times ? 2.0 * static_cast<double>(s.uniform_int(0, 5)) : s.uniform(0.0, 10.0);
    jobs.push_back({static_cast<int>(j + 1), static_cast<double>(s.uniform_int(1, 9)), r});
  }
  std::vector<std::vector<Distribution>> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double mean = integer_times ? 2.0 * static_cast<double>(s.uniform_int(1, 3)) : s.uniform(0.5, 6.0);
      switch (s.uniform_int(0, 3)) {
        case 0:
          d[i].push_back(Distribution::deterministic(mean));
          break;
        case 1:
          d[i].push_back(Distribution::uniform(0.5 * mean, 1.5 * mean));
          break;
        case 2:
          d[i].push_back(Distribution::exponential(mean));
          break;
        default:
          // mean = q x1 + (1-q) x2 with x1 = mean/2, q = 1/2
          d[i].push_back(Distribution::two_point(0.5 * mean, 0.5, 1.5 * mean));
          break;
      }
    }
  }
  return Instance(m, std::move(jobs), std::move(d));
}

// Best fixed-assignment list schedule over deterministic means: every
// assignment, every order per machine, each job started as early as possible.
inline double brute_force_list_schedule(const Instance& inst) {
  const std::size_t n = inst.size(), m = inst.machines();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> assign(n, 0);
  while (true) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> on;
      for (std::size_t j = 0; j < n; ++j)
        if (assign[j] == i) on.push_back(j);
      double best_i = on.empty() ? 0.0 : std::numeric_limits<double>::infinity();
      std::sort(on.begin(), on.end());
      if (!on.empty()) {
        do {
          double t = 0.0, v = 0.0;
          for (std::size_t j : on) {
            t = std::max(t, inst.job(j).release) + inst.mean(i, j);
            v += inst.job(j).weight * t;
          }
          best_i = std::min(best_i, v);
        } while (std::next_permutation(on.begin(), on.end()));
      }
      total += best_i;
    }
    best = std::min(best, total);
    std::size_t k = 0;
    while (k < n && ++assign[k] == m) assign[k++] = 0;
    if (k == n) break;
  }
  return best;
}

}  // namespace sos::test
