#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sos/distribution.hpp"

namespace sos {

struct Job {
  int id = 0;
  double weight = 0.0;
  double release = 0.0;

  friend bool operator==(const Job&, const Job&) = default;
};

/// Jobs plus an m x n matrix of processing-time laws. A single-machine
/// instance is the m = 1 case. Immutable after construction.
class Instance {
 public:
  Instance(std::size_t machines, std::vector<Job> jobs, std::vector<std::vector<Distribution>> dists);

  std::size_t machines() const noexcept { return machines_; }
  std::size_t size() const noexcept { return jobs_.size(); }
  const std::vector<Job>& jobs() const noexcept { return jobs_; }
  const Job& job(std::size_t j) const { return jobs_.at(j); }

  const Distribution& dist(std::size_t machine, std::size_t j) const {
    return dists_.at(machine).at(j);
  }
  double mean(std::size_t machine, std::size_t j) const { return dist(machine, j).mean(); }
  const std::vector<std::vector<Distribution>>& dists() const noexcept { return dists_; }

  /// Index of the job with the given id, or npos.
  std::size_t index_of(int id) const noexcept;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Job indices in online order: by release date, ties by ascending id.
  std::vector<std::size_t> release_order() const;

  /// max over (i, j) of the squared coefficient of variation.
  double delta() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t machines_;
  std::vector<Job> jobs_;
  std::vector<std::vector<Distribution>> dists_;
};

/// Tight a-posteriori bound on the squared coefficients of variation.
inline double instance_delta(const Instance& inst) { return inst.delta(); }

/// One draw of every p_ij, tagged with where it came from.
struct Realization {
  std::vector<std::vector<double>> p;  // [machine][job index]
  std::uint64_t base_seed = 0;
  std::uint64_t rep = 0;

  double at(std::size_t machine, std::size_t j) const { return p.at(machine).at(j); }
};

/// Independent draws, one stream per (seed, rep, machine, job).
Realization sample_realization(const Instance& inst, std::uint64_t base_seed, std::uint64_t rep);

/// The realization where every processing time equals its mean.
Realization mean_realization(const Instance& inst);

enum class Family { deterministic, exponential, uniform, two_point, scaled_bernoulli, mixed };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

struct GeneratorSpec {
  std::size_t jobs = 5;
  std::size_t machines = 1;
  double weight_lo = 1.0, weight_hi = 10.0;
  double release_lo = 0.0, release_hi = 10.0;
  double mean_lo = 1.0, mean_hi = 10.0;
  Family family = Family::exponential;
  std::optional<double> delta_target;
  /// Draw means and releases from the even integers in their ranges, and
  /// weights from the integers (instances that suit the time-indexed LP).
  bool even_integer = false;
};

/// Reproducible random instance. With a Delta target, every entry's squared
/// CV is at most the target; single-family requests must hit it exactly and
/// are refused when the family cannot (e.g. deterministic with Delta > 0).
Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace sos
