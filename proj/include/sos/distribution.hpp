#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "sos/random.hpp"

namespace sos {

enum class DistKind { deterministic, exponential, uniform, two_point, scaled_bernoulli };

std::string_view to_string(DistKind kind);
DistKind dist_kind_from_string(std::string_view name);

/// Number of parameters each family carries.
std::size_t param_count(DistKind kind);

/// Non-negative processing-time law from a closed set of families, each with
/// closed-form moments and overshoot expectation.
///
///   deterministic(v)                 X = v
///   exponential(mean)                rate 1/mean
///   uniform(lo, hi)                  0 <= lo <= hi
///   two_point(x1, q, x2)             P[X = x1] = q, P[X = x2] = 1 - q
///   scaled_bernoulli(scale, q)       P[X = scale] = q, else 0
///
/// Construction validates parameters and rejects a non-positive mean.
class Distribution {
 public:
  static Distribution deterministic(double v);
  static Distribution exponential(double mean);
  static Distribution uniform(double lo, double hi);
  static Distribution two_point(double x1, double q, double x2);
  static Distribution scaled_bernoulli(double scale, double q);

  /// Builds from a kind and raw parameter list (used by the file reader).
  static Distribution from_params(DistKind kind, std::span<const double> params);

  DistKind kind() const noexcept { return kind_; }
  std::span<const double> params() const noexcept { return {params_.data(), param_count(kind_)}; }

  double mean() const noexcept;
  double variance() const noexcept;
  double second_moment() const noexcept { return variance() + mean() * mean(); }
  double squared_cv() const noexcept;

  /// Exact E[(X - beta * E[X])^+] for beta in [0, 1).
  double overshoot(double beta) const;

  /// Smallest delta with E[X - t | X > t] <= delta * E[X] for all t >= 0.
  /// Attained at t = 0 or just at a support point, so a scan over those
  /// candidates is exact for every family here.
  double nbue_delta() const noexcept;

  double sample(Stream& stream) const;

  friend bool operator==(const Distribution& a, const Distribution& b) noexcept {
    return a.kind_ == b.kind_ && a.params_ == b.params_;
  }

 private:
  Distribution(DistKind kind, std::array<double, 3> params);
  void validate() const;

  DistKind kind_;
  std::array<double, 3> params_{};
};

}  // namespace sos
