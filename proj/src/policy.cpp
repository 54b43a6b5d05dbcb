#include "sos/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sos/error.hpp"
#include "sos/random.hpp"

namespace sos {

PolicySpec PolicySpec::parse(const std::string& name, std::optional<double> alpha,
                             std::optional<double> delta, std::optional<double> nbue_delta,
                             std::optional<std::string> density) {
  PolicySpec s;
  std::string base = name;
  if (base.rfind("ga-", 0) == 0) {
    s.ga = true;
    base = base.substr(3);
  }
  if (base == "rsos") {
    s.rule = RuleKind::rsos;
  } else if (base == "dsos") {
    s.rule = RuleKind::dsos;
  } else if (base == "sos") {
    s.rule = RuleKind::sos;
  } else {
    throw InvalidArgument("unknown policy '" + name + "'");
  }
  if (density && s.rule != RuleKind::rsos) throw InvalidArgument("--density only applies to rsos");
  switch (s.rule) {
    case RuleKind::rsos:
      if (alpha || nbue_delta) throw InvalidArgument("rsos takes a density, not --alpha or --nbue-delta");
      if (!density || *density == "uniform") {
        if (delta) throw InvalidArgument("--delta with rsos needs --density fdelta");
        s.density = DensityChoice::uniform;
      } else if (*density == "fdelta") {
        if (!delta) throw InvalidArgument("--density fdelta needs --delta");
        s.density = DensityChoice::fdelta;
      } else {
        throw InvalidArgument("unknown density '" + *density + "'");
      }
      break;
    case RuleKind::dsos:
      if (alpha || delta || nbue_delta) throw InvalidArgument("dsos takes no parameters");
      break;
    case RuleKind::sos: {
      const int given = (alpha ? 1 : 0) + (delta ? 1 : 0) + (nbue_delta ? 1 : 0);
      if (given != 1) throw InvalidArgument("sos needs exactly one of --alpha, --delta, --nbue-delta");
      break;
    }
  }
  if (alpha && !(*alpha > 0.0 && *alpha <= 1.0)) throw InvalidArgument("--alpha must lie in (0, 1]");
  if (delta && !(*delta >= 0.0)) throw InvalidArgument("--delta must be >= 0");
  if (nbue_delta && !(*nbue_delta >= 1.0)) throw InvalidArgument("--nbue-delta must be >= 1");
  s.alpha = alpha;
  s.delta = delta;
  s.nbue_delta = nbue_delta;
  return s;
}

std::string PolicySpec::name() const {
  std::ostringstream os;
  os.precision(12);
  if (ga) os << "ga-";
  switch (rule) {
    case RuleKind::rsos:
      os << "rsos";
      if (density == DensityChoice::fdelta) os << "(fdelta:" << *delta << ")";
      break;
    case RuleKind::dsos:
      os << "dsos";
      break;
    case RuleKind::sos:
      os << "sos(";
      if (alpha) os << "alpha:" << *alpha;
      if (delta) os << "delta:" << *delta;
      if (nbue_delta) os << "nbue:" << *nbue_delta;
      os << ")";
      break;
  }
  return os.str();
}

Policy::Policy(const PolicySpec& spec) : spec_(spec) {
  switch (spec.rule) {
    case RuleKind::rsos:
      if (spec.density == DensityChoice::fdelta) density_ = density_fdelta(*spec.delta);
      nominal_ = density_.kind() == Density::Kind::uniform ? 2.0 : density_.guarantee();
      break;
    case RuleKind::dsos:
      alpha_ = kGoldenMinusOne;
      nominal_ = sos_alpha_guarantee(alpha_, 0.0);
      break;
    case RuleKind::sos:
      if (spec.alpha) {
        alpha_ = *spec.alpha;
        nominal_ = sos_alpha_guarantee(alpha_, 0.0);
      } else if (spec.delta) {
        const auto a = alpha_star_delta(*spec.delta);
        alpha_ = a.alpha;
        nominal_ = a.c;
      } else {
        const auto a = alpha_star_nbue(*spec.nbue_delta);
        alpha_ = a.alpha;
        nominal_ = a.c;
      }
      break;
  }
}

double Policy::surrogate_guarantee(double delta, double nbue) const {
  const double d = std::max(1.0, nbue);
  if (randomized()) {
    if (density_.kind() == Density::Kind::uniform) return 2.0;
    return std::min(smallest_valid_guarantee(density_, TailModel::cv(delta)),
                    smallest_valid_guarantee(density_, TailModel::nbue(d)));
  }
  return std::min(sos_alpha_guarantee(alpha_, g_of_delta(delta)), sos_alpha_guarantee_nbue(alpha_, d));
}

double Policy::mean_busy_guarantee(double delta, double nbue) const {
  if (randomized()) {
    return density_.kind() == Density::Kind::uniform ? 2.0 : std::numeric_limits<double>::quiet_NaN();
  }
  return surrogate_guarantee(delta, nbue);
}

double Policy::draw_alpha(std::uint64_t seed, std::uint64_t rep, int id) const {
  if (!randomized()) return alpha_;
  Stream s(seed, rep, StreamPurpose::alpha, static_cast<std::uint64_t>(static_cast<std::int64_t>(id)), 0);
  return density_.sample(s);
}

PolicyRunner::PolicyRunner(const Instance& inst, const PolicySpec& spec)
    : inst_(inst), policy_(spec) {
  if (!spec.ga && inst.machines() != 1) {
    throw InvalidArgument("single-machine policy " + spec.name() + " needs a one-machine instance; use ga-" +
                          spec.name());
  }
  assignment_ = greedy_assign(inst);
  index_.resize(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    for (const auto& vj : assignment_.machines[i].schedule().jobs()) index_[i].push_back(inst.index_of(vj.id));
  }
}

double PolicyRunner::surrogate_total() const { return assignment_.surrogate_total(); }

double PolicyRunner::weighted_mean_busy() const {
  double total = 0.0;
  for (const auto& m : assignment_.machines) total += m.schedule().weighted_mean_busy_time();
  return total;
}

PolicyRun PolicyRunner::run_with_alphas(const Realization& real, const std::vector<double>& alpha_by_job) const {
  if (alpha_by_job.size() != inst_.size()) throw InvalidArgument("need one alpha per job");
  if (real.p.size() != inst_.machines()) throw InvalidArgument("realization does not match the instance");
  PolicyRun out;
  out.schedule.machines.resize(inst_.machines());
  std::vector<double> alpha, p;
  for (std::size_t i = 0; i < inst_.machines(); ++i) {
    alpha.clear();
    p.clear();
    for (std::size_t j : index_[i]) {
      alpha.push_back(alpha_by_job[j]);
      p.push_back(real.at(i, j));
    }
    out.schedule.machines[i] = sos_schedule(assignment_.machines[i].schedule(), alpha, p);
    for (const auto& e : out.schedule.machines[i]) {
      const double w = inst_.job(inst_.index_of(e.job)).weight;
      out.objective += w * e.completion;
      out.mean_busy += w * (e.completion - 0.5 * e.p);
    }
  }
  return out;
}

PolicyRun PolicyRunner::run(const Realization& real, std::uint64_t seed, std::uint64_t rep) const {
  std::vector<double> alpha(inst_.size());
  for (std::size_t j = 0; j < inst_.size(); ++j) alpha[j] = policy_.draw_alpha(seed, rep, inst_.job(j).id);
  return run_with_alphas(real, alpha);
}

double instance_nbue_delta(const Instance& inst) {
  double d = 0.0;
  for (const auto& row : inst.dists()) {
    for (const auto& dist : row) d = std::max(d, dist.nbue_delta());
  }
  return d;
}

}  // namespace sos
