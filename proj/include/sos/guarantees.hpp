#pragma once

#include <string>
#include <vector>

#include "sos/density.hpp"

namespace sos {

inline constexpr double kGoldenPlusOne = 2.6180339887498948482;  // phi + 1

enum class ComparatorClass { all_policies, fixed_assignment };
std::string to_string(ComparatorClass c);

struct GuaranteeRow {
  double delta;      // Delta, or delta for NBUE tables, or the true Delta in mis-specified rows
  double delta_bar;  // only for mis-specified rows, NaN otherwise
  std::string policy;
  double guarantee;
  ComparatorClass cls;
};

/// Guarantee of the density-optimized randomized single-machine policy.
double randomized_optimized(double delta);
/// Guarantee of SOS(alpha*(Delta)).
double deterministic_optimized(double delta);

/// Immediate-dispatch policies on unrelated machines at Delta, against all
/// policies and against fixed-assignment policies.
std::vector<GuaranteeRow> unrelated_guarantees(double delta);

/// Single-machine policies at Delta.
std::vector<GuaranteeRow> single_machine_guarantees(double delta);

enum class MisspecifiedPolicy { rsos_fdelta, sos_alpha };

/// Guarantee of the policy tuned for delta_bar when the true bound is delta
/// (which may be infinite).
double misspecified_guarantee(double delta_bar, double delta, MisspecifiedPolicy policy,
                              std::size_t grid = 10000);

/// Single-machine rows for delta-NBUE processing times, delta >= 1.
std::vector<GuaranteeRow> nbue_guarantees(double delta);

/// Delta where 8 + 4 Delta meets the GMUX curve.
double gmux_crossing();

/// Long-format curve tables, 12 significant digits.
std::string unrelated_curves_csv(double lo, double hi, double step);
std::string single_machine_curves_csv(double lo, double hi, double step);
std::string misspecified_curves_csv(double lo, double hi, double step);
std::string nbue_curves_csv(double lo, double hi, double step);

}  // namespace sos
