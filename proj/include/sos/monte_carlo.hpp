#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sos/instance.hpp"
#include "sos/policy.hpp"

namespace sos {

struct McStats {
  std::size_t reps = 0;
  double mean = 0.0;
  double sd = 0.0;         // sample standard deviation
  double std_error = 0.0;  // sd / sqrt(reps)
  double ci99 = 0.0;       // normal-approximation half-width

  friend bool operator==(const McStats&, const McStats&) = default;
};

/// Order-independent summary: values are sorted before compensated summation.
McStats summarize(std::vector<double> values);

struct McResult {
  McStats objective;  // sum w C
  McStats mean_busy;  // sum w M with M = C - p / 2
};

/// Worker count from SOS_THREADS, else the hardware concurrency.
unsigned default_threads();

/// R replications. Processing times of replication r come from the streams
/// (seed, r, machine, job); alphas from (seed, r, job) with a separate purpose
/// tag, so adding randomness to a policy never changes the realizations.
McResult monte_carlo(const PolicyRunner& runner, std::size_t reps, std::uint64_t seed,
                     unsigned threads = 0);

enum class Comparator { automatic, surrogate, mean_busy, lp };
Comparator comparator_from_string(const std::string& name);
std::string to_string(Comparator c);

struct RatioReport {
  std::string policy;
  Comparator comparator = Comparator::surrogate;
  McStats stats;             // of the objective matched to the comparator
  std::uint64_t seed = 0;
  double comparator_value = 0.0;
  double ratio = 0.0;        // mean / comparator
  double ratio_ci99 = 0.0;
  double guarantee = 0.0;
  double instance_delta = 0.0;
  double instance_nbue = 0.0;
  bool degenerate = false;   // comparator is zero
  bool pass = false;         // (mean - 3 stderr) / comparator <= guarantee
};

/// Runs the policy and compares against the requested bound:
///   surrogate  E[sum w C] vs sum w (M + mean / 2) of the virtual schedules
///   mean_busy  E[sum w M] vs sum w M of the virtual schedules
///   lp         E[sum w C] vs OPT of the time-indexed relaxation, guarantee x4
/// `automatic` picks surrogate for greedy policies and for density-tuned
/// rsos, mean_busy otherwise. Guarantees use the instance's own Delta and
/// NBUE delta.
RatioReport empirical_ratio_report(const Instance& inst, const PolicySpec& spec, Comparator comparator,
                                   std::size_t reps, std::uint64_t seed, long long lp_cap = 400,
                                   unsigned threads = 0);

std::string results_csv_header();
std::string results_csv_row(const std::string& instance_id, const RatioReport& r);

}  // namespace sos
