#include "sos/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "sos/error.hpp"

namespace sos {

double g_of_delta(double delta) {
  if (!(delta >= 0.0)) throw InvalidArgument("Delta must be >= 0");
  if (std::isinf(delta)) return 0.0;
  if (delta <= 1.0) return (2.0 - std::sqrt(delta)) / 2.0;
  return 1.0 / (delta + 1.0);
}

Density Density::uniform() { return Density{}; }

Density Density::trunc_exp(double D, double gamma, double theta, double c) {
  if (!(D > 0.0 && D <= 1.0) || !(theta > 0.0 && theta <= 1.0 + 1e-12) || !(c > 1.0)) {
    throw InvalidArgument("truncated exponential density needs 0 < D <= 1, 0 < theta <= 1, c > 1");
  }
  Density f;
  f.kind_ = Kind::trunc_exp;
  f.D_ = D;
  f.gamma_ = gamma;
  f.theta_ = std::min(theta, 1.0);
  f.c_ = c;
  return f;
}

Density Density::step(std::vector<double> breaks, std::vector<double> values) {
  if (breaks.size() < 2 || values.size() + 1 != breaks.size()) {
    throw InvalidArgument("step density needs k + 1 breaks for k values");
  }
  if (breaks.front() != 0.0 || breaks.back() != 1.0) {
    throw InvalidArgument("step density breaks must start at 0 and end at 1");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) throw InvalidArgument("step density breaks must increase");
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw InvalidArgument("step density values must be finite and >= 0");
    }
    mass += values[i] * (breaks[i + 1] - breaks[i]);
  }
  if (std::abs(mass - 1.0) > 1e-8) throw InvalidArgument("step density does not integrate to 1");
  Density f;
  f.kind_ = Kind::step;
  f.c_ = std::numeric_limits<double>::quiet_NaN();
  f.theta_ = 1.0;
  f.breaks_ = std::move(breaks);
  f.values_ = std::move(values);
  return f;
}

double Density::pdf(double a) const {
  if (!(a > 0.0 && a <= 1.0)) return 0.0;
  switch (kind_) {
    case Kind::uniform:
      return 1.0;
    case Kind::trunc_exp:
      return a <= theta_ ? (c_ - 1.0) * std::exp(D_ * a) : 0.0;
    case Kind::step: {
      auto it = std::lower_bound(breaks_.begin() + 1, breaks_.end(), a);
      return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }
  }
  return 0.0;
}

double Density::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  x = std::min(x, 1.0);
  switch (kind_) {
    case Kind::uniform:
      return x;
    case Kind::trunc_exp: {
      const double u = std::min(x, theta_);
      return (c_ - 1.0) * std::expm1(D_ * u) / D_;
    }
    case Kind::step: {
      double acc = 0.0;
      for (std::size_t i = 0; i < values_.size() && breaks_[i] < x; ++i) {
        acc += values_[i] * (std::min(x, breaks_[i + 1]) - breaks_[i]);
      }
      return acc;
    }
  }
  return 0.0;
}

double Density::partial_mean(double x) const {
  if (x <= 0.0) return 0.0;
  x = std::min(x, 1.0);
  switch (kind_) {
    case Kind::uniform:
      return 0.5 * x * x;
    case Kind::trunc_exp: {
      const double u = std::min(x, theta_);
      return (c_ - 1.0) * (u * std::exp(D_ * u) / D_ - std::expm1(D_ * u) / (D_ * D_));
    }
    case Kind::step: {
      double acc = 0.0;
      for (std::size_t i = 0; i < values_.size() && breaks_[i] < x; ++i) {
        const double b = std::min(x, breaks_[i + 1]);
        acc += values_[i] * 0.5 * (b * b - breaks_[i] * breaks_[i]);
      }
      return acc;
    }
  }
  return 0.0;
}

double Density::inverse_cdf(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidArgument("inverse CDF argument must lie in [0, 1]");
  switch (kind_) {
    case Kind::uniform:
      return u;
    case Kind::trunc_exp:
      return std::min(theta_, std::log1p(u * std::expm1(D_ * theta_)) / D_);
    case Kind::step: {
      double acc = 0.0;
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const double mass = values_[i] * (breaks_[i + 1] - breaks_[i]);
        if (mass > 0.0 && acc + mass >= u) {
          return std::min(breaks_[i + 1], breaks_[i] + (u - acc) / values_[i]);
        }
        acc += mass;
      }
      // Rounding left a sliver of mass: return the right end of the support.
      for (std::size_t i = values_.size(); i-- > 0;) {
        if (values_[i] > 0.0) return breaks_[i + 1];
      }
      return 1.0;
    }
  }
  return u;
}

double gamma_equation_residual(double D, double gamma) {
  const double e = std::exp(D * gamma);
  const double a = 1.0 + D * (1.0 - gamma);
  const double inner = e * a * (D * (gamma - D * (1.0 - gamma) + std::log(a)) - 1.0) +
                       D * gamma * (D - 2.0) + 2.0;
  return e * inner - (1.0 - D);
}

namespace {

template <class F>
double bisect(F&& f, double lo, double hi, const char* what) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw NumericalError(std::string(what) + ": root not bracketed");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0 || std::abs(fm) <= 1e-15 || hi - lo <= 1e-17) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// 5-point Gauss-Legendre on [a, b] split into panels.
template <class F>
double integrate(F&& f, double a, double b, int panels = 64) {
  static constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831,
                                           -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665,
                                           0.4786286704993665, 0.2369268850561891,
                                           0.2369268850561891};
  if (!(b > a)) return 0.0;
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < 5; ++k) acc += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return acc * 0.5 * h;
}

// Integral of delta / (delta + x - a) f(a) over (0, x].
double nbue_kernel_integral(const Density& f, double delta, double x) {
  switch (f.kind()) {
    case Density::Kind::uniform:
      return delta * std::log1p(x / delta);
    case Density::Kind::step: {
      double acc = 0.0;
      const auto& b = f.breaks();
      for (std::size_t i = 0; i < f.values().size() && b[i] < x; ++i) {
        const double hi = std::min(x, b[i + 1]);
        acc += f.values()[i] * delta * std::log((delta + x - b[i]) / (delta + x - hi));
      }
      return acc;
    }
    case Density::Kind::trunc_exp:
      return integrate([&](double a) { return delta / (delta + x - a) * f.pdf(a); }, 0.0,
                       std::min(x, f.theta()));
  }
  return 0.0;
}

// Left sides of both conditions at x; right sides are (c - 1) x and c x.
struct ConditionSides {
  double i;
  double ii;
};

class ConditionEvaluator {
 public:
  ConditionEvaluator(const Density& f, const TailModel& model) : f_(f), model_(model) {
    if (model.kind == TailModel::Kind::cv) {
      g_ = g_of_delta(model.value);
      factor_ii_ = 2.0 - g_ * (1.0 - f.mean());
    } else {
      if (!(model.value > 0.0) || !std::isfinite(model.value)) {
        throw InvalidArgument("NBUE delta must be positive and finite");
      }
      factor_ii_ = 1.0 + nbue_kernel_integral(f, model.value, 1.0);
    }
  }

  ConditionSides at(double x) const {
    double lhs_i;
    if (model_.kind == TailModel::Kind::cv) {
      lhs_i = (1.0 - g_ * x) * f_.cdf(x) + g_ * f_.partial_mean(x);
    } else {
      lhs_i = nbue_kernel_integral(f_, model_.value, x);
    }
    return {lhs_i, factor_ii_ * (1.0 - f_.cdf(1.0 - x))};
  }

 private:
  const Density& f_;
  TailModel model_;
  double g_ = 0.0;
  double factor_ii_ = 0.0;
};

}  // namespace

double solve_gamma(double D) {
  if (!(D > 0.0 && D <= 1.0)) throw InvalidArgument("gamma equation needs 0 < D <= 1");
  return bisect([D](double gam) { return gamma_equation_residual(D, gam); }, 0.0, 1.0,
                "gamma equation");
}

Density density_fdelta(double delta) {
  const double D = g_of_delta(delta);
  if (D == 0.0) return Density::uniform();
  const double gamma = solve_gamma(D);
  const double theta = gamma + std::log1p(D * (1.0 - gamma)) / D;
  const double c = 1.0 + D / std::expm1(D * theta);
  if (!(theta > 0.0 && theta <= 1.0 + 1e-12)) throw NumericalError("density support outside (0, 1]");
  return Density::trunc_exp(D, gamma, theta, c);
}

ConditionReport verify_density_conditions(const Density& f, const TailModel& model, double c,
                                          std::size_t grid) {
  if (grid < 100) throw InvalidArgument("condition grid needs at least 100 points");
  ConditionEvaluator eval(f, model);
  ConditionReport rep;
  rep.violation_i = rep.violation_ii = -std::numeric_limits<double>::infinity();
  rep.normalization_error = std::abs(f.total_mass() - 1.0);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(grid);
    const auto s = eval.at(x);
    const double vi = s.i - (c - 1.0) * x;
    const double vii = s.ii - c * x;
    if (vi > rep.violation_i) {
      rep.violation_i = vi;
      rep.worst_x_i = x;
    }
    if (vii > rep.violation_ii) {
      rep.violation_ii = vii;
      rep.worst_x_ii = x;
    }
  }
  return rep;
}

double smallest_valid_guarantee(const Density& f, const TailModel& model, std::size_t grid) {
  if (grid < 100) throw InvalidArgument("condition grid needs at least 100 points");
  ConditionEvaluator eval(f, model);
  double c = 1.0;
  auto probe = [&](double x) {
    const auto s = eval.at(x);
    c = std::max({c, 1.0 + s.i / x, s.ii / x});
  };
  // the supremum can sit at the x -> 0 limit, which no grid point reaches;
  // extrapolate it linearly from two small x
  {
    const double h = 1e-5;
    const auto a = eval.at(h), b = eval.at(2.0 * h);
    c = std::max({c, 1.0 + 2.0 * a.i / h - b.i / (2.0 * h), 2.0 * a.ii / h - b.ii / (2.0 * h)});
  }
  for (std::size_t k = 1; k <= grid; ++k) probe(static_cast<double>(k) / static_cast<double>(grid));
  return c;
}

AlphaChoice alpha_star_delta(double delta) {
  const double g = g_of_delta(delta);
  const double alpha = (g - 1.0 + std::sqrt(g * (g + 2.0) + 5.0)) / (2.0 * (g + 1.0));
  return {alpha, 1.0 + 1.0 / alpha};
}

AlphaChoice alpha_star_nbue(double delta) {
  if (!(delta >= 1.0)) throw InvalidArgument("NBUE delta must be >= 1");
  double alpha;
  if (std::isinf(delta)) {
    alpha = kGoldenMinusOne;
  } else {
    alpha = bisect([delta](double a) { return a * a * a - (1.0 + delta) * (a * a + a - 1.0); },
                   0.0, 1.0, "NBUE cubic");
  }
  return {alpha, sos_alpha_guarantee_nbue(alpha, delta)};
}

double sos_alpha_guarantee(double alpha, double g) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  return 1.0 + std::max(1.0 / alpha, 1.0 + alpha - g * (1.0 - alpha));
}

double sos_alpha_guarantee_nbue(double alpha, double delta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  const double second = std::isinf(delta)
                            ? 2.0 + alpha
                            : ((2.0 + alpha) * delta + 1.0 - alpha * alpha) / (delta + 1.0 - alpha);
  return std::max(1.0 + 1.0 / alpha, second);
}

}  // namespace sos
