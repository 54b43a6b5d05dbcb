#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sos/instance.hpp"
#include "sos/simplex.hpp"

namespace sos {

struct Rational {
  long long num;
  long long den;
};

/// Continued-fraction approximation within tol * max(1, |v|).
Rational rationalize(double v, double tol = 1e-9);

/// Time-indexed relaxation over unit slots of the scaled instance, where all
/// releases and means are even integers. Variables y(i, j, t) exist for
/// t = r_j, ..., T - 1.
struct LprModel {
  struct Column {
    std::size_t machine;
    std::size_t job;
    long long t;
  };

  double sigma = 1.0;  // scaled time = sigma * original time
  long long horizon = 0;
  std::size_t machines = 0;
  std::vector<int> ids;
  std::vector<double> weight;
  std::vector<long long> release;            // scaled
  std::vector<std::vector<long long>> mean;  // scaled, [machine][job]
  std::vector<Column> columns;               // ordered by machine, job, t

  std::size_t jobs() const noexcept { return ids.size(); }
  std::size_t rows() const noexcept { return jobs() + machines * static_cast<std::size_t>(horizon); }
  std::size_t capacity_row(std::size_t machine, long long t) const {
    return jobs() + machine * static_cast<std::size_t>(horizon) + static_cast<std::size_t>(t);
  }
  double cost(const Column& c) const {
    const double p = static_cast<double>(mean[c.machine][c.job]);
    return weight[c.job] * ((static_cast<double>(c.t) + 0.5) / p + 0.5);
  }

  LpProblem to_problem() const;
};

/// Scales the instance means and releases to the smallest even-integer grid
/// and lays out the model. Throws CapExceeded when T exceeds `cap`.
LprModel build_lpr(const Instance& inst, long long cap = 400);

/// The scaled instance with deterministic means; what the certificate's
/// greedy run operates on.
Instance scaled_instance(const LprModel& model);

struct LprSolution {
  double value = 0.0;         // original time units
  double scaled_value = 0.0;  // scaled units
  std::vector<double> y;      // per model column
  std::vector<double> chi;    // job-row duals, scaled units
  std::vector<std::vector<double>> psi;  // [machine][t], scaled units, >= 0
  std::size_t iterations = 0;
};

LprSolution solve_lpr(const LprModel& model);

/// Free-format MPS text of the model (scaled units).
std::string export_mps(const LprModel& model);

}  // namespace sos
