#pragma once

#include <cstddef>
#include <vector>

#include "sos/random.hpp"

namespace sos {

/// Variance-dependent slack factor: (2 - sqrt(D)) / 2 for D <= 1 and
/// 1 / (D + 1) above. Infinity maps to 0.
double g_of_delta(double delta);

/// Law of the alpha draws on (0, 1].
class Density {
 public:
  enum class Kind { uniform, trunc_exp, step };

  static Density uniform();
  /// pdf (c - 1) exp(D a) on (0, theta], 0 on (theta, 1].
  static Density trunc_exp(double D, double gamma, double theta, double c);
  /// Piecewise constant: value[i] on (breaks[i], breaks[i + 1]]. Breaks must
  /// run from 0 to 1 strictly increasing; values are renormalized only if
  /// their integral is within 1e-8 of 1, otherwise rejected.
  static Density step(std::vector<double> breaks, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double D() const noexcept { return D_; }
  double gamma() const noexcept { return gamma_; }
  double theta() const noexcept { return theta_; }
  /// Guarantee the density was built for (2 for uniform, NaN for steps).
  double guarantee() const noexcept { return c_; }
  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double pdf(double a) const;
  double cdf(double x) const;
  /// Integral of a f(a) over (0, x].
  double partial_mean(double x) const;
  double mean() const { return partial_mean(1.0); }
  double total_mass() const { return cdf(1.0); }
  double inverse_cdf(double u) const;
  double sample(Stream& s) const { return inverse_cdf(s.uniform_open_closed()); }

 private:
  Kind kind_ = Kind::uniform;
  double D_ = 0.0, gamma_ = 0.0, theta_ = 1.0, c_ = 2.0;
  std::vector<double> breaks_, values_;
};

/// Left side minus right side of the transcendental equation defining gamma.
double gamma_equation_residual(double D, double gamma);

/// Root of the gamma equation in (0, 1) by bisection.
double solve_gamma(double D);

/// The density optimized for squared CV bound delta; uniform when g = 0.
Density density_fdelta(double delta);

/// Tail assumption used by the condition checker.
struct TailModel {
  enum class Kind { cv, nbue } kind = Kind::cv;
  double value = 0.0;  // Delta for cv, delta for nbue

  static TailModel cv(double delta) { return {Kind::cv, delta}; }
  static TailModel nbue(double delta) { return {Kind::nbue, delta}; }
};

struct ConditionReport {
  double violation_i = 0.0;   // max over the grid of lhs - rhs, condition (i)
  double violation_ii = 0.0;  // same for condition (ii)
  double normalization_error = 0.0;
  double worst_x_i = 0.0, worst_x_ii = 0.0;

  bool holds(double tol = 1e-8) const {
    return violation_i <= tol && violation_ii <= tol && normalization_error <= tol;
  }
};

/// Checks the two sufficient conditions for guarantee c at x = 1/G, ..., 1.
ConditionReport verify_density_conditions(const Density& f, const TailModel& model, double c,
                                          std::size_t grid = 10000);

/// Smallest c for which both conditions hold on the grid. Both conditions are
/// affine in c, so this is a maximum over the grid rather than a search.
double smallest_valid_guarantee(const Density& f, const TailModel& model, std::size_t grid = 10000);

struct AlphaChoice {
  double alpha;
  double c;
};

/// Best constant alpha for squared CV bound delta and its guarantee.
AlphaChoice alpha_star_delta(double delta);

/// Best constant alpha for delta-NBUE times (delta >= 1), from the cubic.
AlphaChoice alpha_star_nbue(double delta);

/// Mean-busy-time guarantee of SOS(alpha) when the true bound has slack g.
double sos_alpha_guarantee(double alpha, double g);

/// Same for delta-NBUE processing times.
double sos_alpha_guarantee_nbue(double alpha, double delta);

inline constexpr double kGoldenMinusOne = 0.6180339887498948482;  // (sqrt 5 - 1) / 2

}  // namespace sos
