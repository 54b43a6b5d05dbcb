#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sos/alpha_policies.hpp"
#include "sos/density.hpp"
#include "sos/greedy_assignment.hpp"
#include "sos/instance.hpp"

namespace sos {

enum class RuleKind { rsos, dsos, sos };
enum class DensityChoice { uniform, fdelta };

/// A policy as requested by the user. Names: rsos, dsos, sos and their
/// greedy-dispatch versions ga-rsos, ga-dsos, ga-sos.
///   rsos     density uniform (default) or fdelta (needs delta)
///   dsos     no parameters
///   sos      exactly one of alpha, delta (alpha*(Delta)) or nbue_delta
struct PolicySpec {
  bool ga = false;
  RuleKind rule = RuleKind::dsos;
  DensityChoice density = DensityChoice::uniform;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<double> nbue_delta;

  static PolicySpec parse(const std::string& name, std::optional<double> alpha = {},
                          std::optional<double> delta = {}, std::optional<double> nbue_delta = {},
                          std::optional<std::string> density = {});
  std::string name() const;
};

/// A resolved policy: either a fixed alpha or an alpha density.
class Policy {
 public:
  explicit Policy(const PolicySpec& spec);

  const PolicySpec& spec() const noexcept { return spec_; }
  bool ga() const noexcept { return spec_.ga; }
  bool randomized() const noexcept { return spec_.rule == RuleKind::rsos; }
  double alpha() const noexcept { return alpha_; }
  const Density& density() const noexcept { return density_; }

  /// Guarantee the policy was tuned for (what the run header records).
  double nominal_guarantee() const noexcept { return nominal_; }

  /// Guarantee of E[sum w C] against sum w (M + mean / 2) of the virtual
  /// schedules, for an instance whose squared CVs are at most `delta` and
  /// whose laws are `nbue`-NBUE.
  double surrogate_guarantee(double delta, double nbue) const;

  /// Guarantee of E[sum w M] against sum w M of the virtual schedules; NaN
  /// when no such statement is available for this policy.
  double mean_busy_guarantee(double delta, double nbue) const;

  /// alpha for job `id` in replication `rep`.
  double draw_alpha(std::uint64_t seed, std::uint64_t rep, int id) const;

 private:
  PolicySpec spec_;
  double alpha_ = kGoldenMinusOne;
  Density density_ = Density::uniform();
  double nominal_ = 0.0;
};

struct PolicyRun {
  RealizedSchedule schedule;
  double objective = 0.0;   // sum w C
  double mean_busy = 0.0;   // sum w (C - p / 2)
};

/// Policy bound to an instance. The assignment and the virtual schedules do
/// not depend on the realization, so they are built once.
class PolicyRunner {
 public:
  PolicyRunner(const Instance& inst, const PolicySpec& spec);

  const Instance& instance() const noexcept { return inst_; }
  const Policy& policy() const noexcept { return policy_; }
  const Assignment& assignment() const noexcept { return assignment_; }

  /// sum w (M + mean / 2) over the virtual schedules.
  double surrogate_total() const;
  /// sum w M over the virtual schedules.
  double weighted_mean_busy() const;

  PolicyRun run(const Realization& real, std::uint64_t seed, std::uint64_t rep) const;
  PolicyRun run_with_alphas(const Realization& real, const std::vector<double>& alpha_by_job) const;

 private:
  const Instance& inst_;
  Policy policy_;
  Assignment assignment_;
  std::vector<std::vector<std::size_t>> index_;  // per machine: instance index of vs.jobs()[k]
};

/// Largest NBUE delta over all laws of the instance.
double instance_nbue_delta(const Instance& inst);

}  // namespace sos
