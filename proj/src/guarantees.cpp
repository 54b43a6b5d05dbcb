#include "sos/guarantees.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt5 = std::sqrt(5.0);

double gmux(double delta) { return 184.0 / 51.0 * (2.0 - g_of_delta(delta)) * (2.0 + delta); }

std::vector<double> grid_points(double lo, double hi, double step) {
  if (!(lo >= 0.0 && hi >= lo && step > 0.0) || hi > 10.0) {
    throw InvalidArgument("curve range must lie in [0, 10] with a positive step");
  }
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> xs;
  for (std::size_t k = 0; k < count; ++k) xs.push_back(std::min(hi, lo + static_cast<double>(k) * step));
  return xs;
}

std::string rows_csv(const std::vector<GuaranteeRow>& rows, bool with_bar) {
  std::ostringstream os;
  os.precision(12);
  os << (with_bar ? "delta_bar,delta,policy,guarantee,class\n" : "delta,policy,guarantee,class\n");
  for (const auto& r : rows) {
    if (with_bar) os << r.delta_bar << ',';
    os << r.delta << ',' << r.policy << ',' << r.guarantee << ',' << to_string(r.cls) << '\n';
  }
  return os.str();
}

}  // namespace

std::string to_string(ComparatorClass c) {
  return c == ComparatorClass::all_policies ? "all" : "fixed_assignment";
}

double randomized_optimized(double delta) {
  const auto f = density_fdelta(delta);
  return f.kind() == Density::Kind::uniform ? 2.0 : f.guarantee();
}

double deterministic_optimized(double delta) { return alpha_star_delta(delta).c; }

std::vector<GuaranteeRow> unrelated_guarantees(double delta) {
  const double cr = randomized_optimized(delta);
  const double cd = deterministic_optimized(delta);
  const auto all = ComparatorClass::all_policies;
  const auto fa = ComparatorClass::fixed_assignment;
  return {
      {delta, kNaN, "ga-rsos", 8.0 + 4.0 * delta, all},
      {delta, kNaN, "ga-dsos", (3.0 + kSqrt5) * (2.0 + delta), all},
      {delta, kNaN, "randomized-optimized", cr * (4.0 + 2.0 * delta), all},
      {delta, kNaN, "deterministic-optimized", cd * (4.0 + 2.0 * delta), all},
      {delta, kNaN, "gmux", gmux(delta), all},
      {delta, kNaN, "ga-rsos", 8.0, fa},
      {delta, kNaN, "ga-dsos", 2.0 * (3.0 + kSqrt5), fa},
      {delta, kNaN, "randomized-optimized", 4.0 * cr, fa},
      {delta, kNaN, "deterministic-optimized", 4.0 * cd, fa},
  };
}

std::vector<GuaranteeRow> single_machine_guarantees(double delta) {
  const auto all = ComparatorClass::all_policies;
  return {
      {delta, kNaN, "rsos", 2.0, all},
      {delta, kNaN, "dsos", kGoldenPlusOne, all},
      {delta, kNaN, "randomized-optimized", randomized_optimized(delta), all},
      {delta, kNaN, "deterministic-optimized", deterministic_optimized(delta), all},
  };
}

double misspecified_guarantee(double delta_bar, double delta, MisspecifiedPolicy policy,
                              std::size_t grid) {
  if (!(delta_bar >= 0.0) || !(delta >= 0.0)) throw InvalidArgument("Delta values must be >= 0");
  if (policy == MisspecifiedPolicy::sos_alpha) {
    return sos_alpha_guarantee(alpha_star_delta(delta_bar).alpha, g_of_delta(delta));
  }
  return smallest_valid_guarantee(density_fdelta(delta_bar), TailModel::cv(delta), grid);
}

std::vector<GuaranteeRow> nbue_guarantees(double delta) {
  if (!(delta >= 1.0)) throw InvalidArgument("NBUE delta must be >= 1");
  const auto all = ComparatorClass::all_policies;
  const double as_cv = 2.0 * delta - 1.0;
  return {
      {delta, kNaN, "rsos", 2.0, all},
      {delta, kNaN, "dsos", kGoldenPlusOne, all},
      {delta, kNaN, "deterministic-via-cv", deterministic_optimized(as_cv), all},
      {delta, kNaN, "deterministic-direct", alpha_star_nbue(delta).c, all},
      {delta, kNaN, "randomized-via-cv", randomized_optimized(as_cv), all},
  };
}

double gmux_crossing() {
  double lo = 0.0, hi = 2.0;
  auto h = [](double d) { return 8.0 + 4.0 * d - gmux(d); };
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string unrelated_curves_csv(double lo, double hi, double step) {
  std::vector<GuaranteeRow> rows;
  for (double d : grid_points(lo, hi, step)) {
    for (auto& r : unrelated_guarantees(d)) rows.push_back(std::move(r));
  }
  return rows_csv(rows, false);
}

std::string single_machine_curves_csv(double lo, double hi, double step) {
  std::vector<GuaranteeRow> rows;
  for (double d : grid_points(lo, hi, step)) {
    for (auto& r : single_machine_guarantees(d)) rows.push_back(std::move(r));
  }
  return rows_csv(rows, false);
}

std::string misspecified_curves_csv(double lo, double hi, double step) {
  std::vector<GuaranteeRow> rows;
  const auto xs = grid_points(lo, hi, step);
  for (double bar : xs) {
    for (double d : xs) {
      rows.push_back({d, bar, "rsos-fdelta", misspecified_guarantee(bar, d, MisspecifiedPolicy::rsos_fdelta),
                      ComparatorClass::all_policies});
      rows.push_back({d, bar, "sos-alpha", misspecified_guarantee(bar, d, MisspecifiedPolicy::sos_alpha),
                      ComparatorClass::all_policies});
    }
  }
  return rows_csv(rows, true);
}

std::string nbue_curves_csv(double lo, double hi, double step) {
  std::vector<GuaranteeRow> rows;
  for (double d : grid_points(lo, hi, step)) {
    if (d < 1.0) continue;
    for (auto& r : nbue_guarantees(d)) rows.push_back(std::move(r));
  }
  return rows_csv(rows, false);
}

}  // namespace sos
