#include "sos/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::string_view to_string(DistKind kind) {
  switch (kind) {
    case DistKind::deterministic:
      return "deterministic";
    case DistKind::exponential:
      return "exponential";
    case DistKind::uniform:
      return "uniform";
    case DistKind::two_point:
      return "two_point";
    case DistKind::scaled_bernoulli:
      return "scaled_bernoulli";
  }
  return "unknown";
}

DistKind dist_kind_from_string(std::string_view name) {
  for (auto k : {DistKind::deterministic, DistKind::exponential, DistKind::uniform,
                 DistKind::two_point, DistKind::scaled_bernoulli}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown distribution kind '" + std::string(name) + "'");
}

std::size_t param_count(DistKind kind) {
  switch (kind) {
    case DistKind::deterministic:
    case DistKind::exponential:
      return 1;
    case DistKind::uniform:
    case DistKind::scaled_bernoulli:
      return 2;
    case DistKind::two_point:
      return 3;
  }
  return 0;
}

Distribution::Distribution(DistKind kind, std::array<double, 3> params)
    : kind_(kind), params_(params) {
  validate();
}

Distribution Distribution::deterministic(double v) { return {DistKind::deterministic, {v, 0, 0}}; }
Distribution Distribution::exponential(double mean) { return {DistKind::exponential, {mean, 0, 0}}; }
Distribution Distribution::uniform(double lo, double hi) { return {DistKind::uniform, {lo, hi, 0}}; }
Distribution Distribution::two_point(double x1, double q, double x2) {
  return {DistKind::two_point, {x1, q, x2}};
}
Distribution Distribution::scaled_bernoulli(double scale, double q) {
  return {DistKind::scaled_bernoulli, {scale, q, 0}};
}

Distribution Distribution::from_params(DistKind kind, std::span<const double> params) {
  if (params.size() != param_count(kind)) {
    std::ostringstream os;
    os << to_string(kind) << " takes " << param_count(kind) << " parameters, got "
       << params.size();
    throw InvalidArgument(os.str());
  }
  std::array<double, 3> p{};
  std::copy(params.begin(), params.end(), p.begin());
  return {kind, p};
}

void Distribution::validate() const {
  const auto& p = params_;
  auto fail = [&](const char* why) {
    throw InvalidArgument(std::string("invalid ") + std::string(to_string(kind_)) +
                          " distribution: " + why);
  };
  switch (kind_) {
    case DistKind::deterministic:
    case DistKind::exponential:
      if (!finite_nonneg(p[0])) fail("parameter must be finite and non-negative");
      break;
    case DistKind::uniform:
      if (!finite_nonneg(p[0]) || !finite_nonneg(p[1])) fail("bounds must be finite, >= 0");
      if (p[0] > p[1]) fail("lo > hi");
      break;
    case DistKind::two_point:
      if (!finite_nonneg(p[0]) || !finite_nonneg(p[2])) fail("support must be finite, >= 0");
      if (!(p[1] >= 0.0 && p[1] <= 1.0)) fail("q must lie in [0, 1]");
      break;
    case DistKind::scaled_bernoulli:
      if (!finite_nonneg(p[0])) fail("scale must be finite, >= 0");
      if (!(p[1] > 0.0 && p[1] <= 1.0)) fail("q must lie in (0, 1]");
      break;
  }
  if (!(mean() > 0.0)) fail("mean must be positive");
}

double Distribution::mean() const noexcept {
  const auto& p = params_;
  switch (kind_) {
    case DistKind::deterministic:
    case DistKind::exponential:
      return p[0];
    case DistKind::uniform:
      return 0.5 * (p[0] + p[1]);
    case DistKind::two_point:
      return p[1] * p[0] + (1.0 - p[1]) * p[2];
    case DistKind::scaled_bernoulli:
      return p[0] * p[1];
  }
  return 0.0;
}

double Distribution::variance() const noexcept {
  const auto& p = params_;
  switch (kind_) {
    case DistKind::deterministic:
      return 0.0;
    case DistKind::exponential:
      return p[0] * p[0];
    case DistKind::uniform: {
      const double w = p[1] - p[0];
      return w * w / 12.0;
    }
    case DistKind::two_point: {
      const double d = p[2] - p[0];
      return p[1] * (1.0 - p[1]) * d * d;
    }
    case DistKind::scaled_bernoulli:
      return p[0] * p[0] * p[1] * (1.0 - p[1]);
  }
  return 0.0;
}

double Distribution::squared_cv() const noexcept {
  const double m = mean();
  return variance() / (m * m);
}

double Distribution::overshoot(double beta) const {
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidArgument("overshoot: beta must lie in [0, 1)");
  const auto& p = params_;
  const double a = beta * mean();
  auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
  switch (kind_) {
    case DistKind::deterministic:
      return (1.0 - beta) * p[0];
    case DistKind::exponential:
      // E[(X - a)^+] = mean * exp(-a / mean)
      return p[0] * std::exp(-beta);
    case DistKind::uniform: {
      const double lo = p[0], hi = p[1];
      if (a <= lo || hi == lo) return pos(mean() - a);
      return (hi - a) * (hi - a) / (2.0 * (hi - lo));
    }
    case DistKind::two_point:
      return p[1] * pos(p[0] - a) + (1.0 - p[1]) * pos(p[2] - a);
    case DistKind::scaled_bernoulli:
      return p[1] * pos(p[0] - a);
  }
  return 0.0;
}

double Distribution::nbue_delta() const noexcept {
  const auto& p = params_;
  const double m = mean();
  switch (kind_) {
    case DistKind::deterministic:
    case DistKind::exponential:
    case DistKind::uniform:
      // Mean residual life is maximal at t = 0, where it equals the mean.
      return 1.0;
    case DistKind::two_point: {
      const double lo = std::min(p[0], p[2]), hi = std::max(p[0], p[2]);
      const double q_lo = p[0] <= p[2] ? p[1] : 1.0 - p[1];
      // t = 0: E[X | X > 0]
      double best;
      if (lo > 0.0 || q_lo == 0.0) {
        best = m;
      } else {
        best = hi;  // lo == 0, so X > 0 means X = hi
      }
      // t -> lo from above with hi still possible: E[X - t | X > t] -> hi - lo
      if (q_lo < 1.0) best = std::max(best, hi - lo);
      return best / m;
    }
    case DistKind::scaled_bernoulli:
      return 1.0 / p[1];
  }
  return 1.0;
}

double Distribution::sample(Stream& stream) const {
  const auto& p = params_;
  switch (kind_) {
    case DistKind::deterministic:
      return p[0];
    case DistKind::exponential:
      return -p[0] * std::log(stream.uniform_open_closed());
    case DistKind::uniform:
      return stream.uniform(p[0], p[1]);
    case DistKind::two_point:
      return stream.uniform01() < p[1] ? p[0] : p[2];
    case DistKind::scaled_bernoulli:
      return stream.uniform01() < p[1] ? p[0] : 0.0;
  }
  return 0.0;
}

}  // namespace sos
