#include "sos/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "sos/error.hpp"
#include "sos/random.hpp"

namespace sos {

Instance::Instance(std::size_t machines, std::vector<Job> jobs,
                   std::vector<std::vector<Distribution>> dists)
    : machines_(machines), jobs_(std::move(jobs)), dists_(std::move(dists)) {
  if (machines_ == 0) throw InvalidArgument("instance needs at least one machine");
  if (dists_.size() != machines_) {
    throw InvalidArgument("dists must have one row per machine");
  }
  std::set<int> ids;
  for (const auto& j : jobs_) {
    if (!(std::isfinite(j.weight) && j.weight >= 0.0)) {
      throw InvalidArgument("job " + std::to_string(j.id) + ": weight must be finite and >= 0");
    }
    if (!(std::isfinite(j.release) && j.release >= 0.0)) {
      throw InvalidArgument("job " + std::to_string(j.id) + ": release must be finite and >= 0");
    }
    if (!ids.insert(j.id).second) {
      throw InvalidArgument("duplicate job id " + std::to_string(j.id));
    }
  }
  for (const auto& row : dists_) {
    if (row.size() != jobs_.size()) {
      throw InvalidArgument("every dists row must have one entry per job");
    }
  }
}

std::size_t Instance::index_of(int id) const noexcept {
  for (std::size_t j = 0; j < jobs_.size(); ++j) {
    if (jobs_[j].id == id) return j;
  }
  return npos;
}

std::vector<std::size_t> Instance::release_order() const {
  std::vector<std::size_t> order(jobs_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (jobs_[a].release != jobs_[b].release) return jobs_[a].release < jobs_[b].release;
    return jobs_[a].id < jobs_[b].id;
  });
  return order;
}

double Instance::delta() const {
  double d = 0.0;
  for (const auto& row : dists_) {
    for (const auto& dist : row) d = std::max(d, dist.squared_cv());
  }
  return d;
}

Realization sample_realization(const Instance& inst, std::uint64_t base_seed, std::uint64_t rep) {
  Realization r;
  r.base_seed = base_seed;
  r.rep = rep;
  r.p.resize(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    r.p[i].resize(inst.size());
    for (std::size_t j = 0; j < inst.size(); ++j) {
      const auto& d = inst.dist(i, j);
      if (d.kind() == DistKind::deterministic) {
        r.p[i][j] = d.mean();
        continue;
      }
      Stream s(base_seed, rep, StreamPurpose::processing_time, i,
               static_cast<std::uint64_t>(static_cast<std::int64_t>(inst.job(j).id)));
      r.p[i][j] = d.sample(s);
    }
  }
  return r;
}

Realization mean_realization(const Instance& inst) {
  Realization r;
  r.p.resize(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i) {
    for (std::size_t j = 0; j < inst.size(); ++j) r.p[i].push_back(inst.mean(i, j));
  }
  return r;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::deterministic:
      return "deterministic";
    case Family::exponential:
      return "exponential";
    case Family::uniform:
      return "uniform";
    case Family::two_point:
      return "two_point";
    case Family::scaled_bernoulli:
      return "scaled_bernoulli";
    case Family::mixed:
      return "mixed";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (auto f : {Family::deterministic, Family::exponential, Family::uniform, Family::two_point,
                 Family::scaled_bernoulli, Family::mixed}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown distribution family '" + name + "'");
}

namespace {

constexpr double kUniformMaxDelta = 1.0 / 3.0;

Distribution uniform_with_delta(double mean, double delta) {
  const double s = std::sqrt(3.0 * delta);
  return Distribution::uniform(mean * (1.0 - s), mean * (1.0 + s));
}

Distribution two_point_with_delta(double mean, double delta) {
  if (delta <= 1.0) {
    const double s = std::sqrt(delta);
    return Distribution::two_point(mean * (1.0 - s), 0.5, mean * (1.0 + s));
  }
  return Distribution::two_point(0.0, delta / (1.0 + delta), mean * (1.0 + delta));
}

Distribution scaled_bernoulli_with_delta(double mean, double delta) {
  return Distribution::scaled_bernoulli(mean * (1.0 + delta), 1.0 / (1.0 + delta));
}

void check_target(Family f, double target) {
  auto refuse = [&](const std::string& why) {
    throw InvalidArgument("Delta target " + std::to_string(target) + " infeasible for family " +
                          to_string(f) + ": " + why);
  };
  if (!(std::isfinite(target) && target >= 0.0)) refuse("target must be finite and >= 0");
  switch (f) {
    case Family::deterministic:
      if (target != 0.0) refuse("deterministic laws have Delta = 0");
      break;
    case Family::exponential:
      if (target != 1.0) refuse("exponential laws have Delta = 1");
      break;
    case Family::uniform:
      if (target > kUniformMaxDelta) refuse("uniform laws on [0, inf) have Delta <= 1/3");
      break;
    default:
      break;
  }
}

Distribution draw_distribution(Family f, double mean, const std::optional<double>& target,
                               Stream& s) {
  switch (f) {
    case Family::deterministic:
      return Distribution::deterministic(mean);
    case Family::exponential:
      return Distribution::exponential(mean);
    case Family::uniform:
      return uniform_with_delta(mean, target ? *target : s.uniform(0.0, kUniformMaxDelta));
    case Family::two_point:
      return two_point_with_delta(mean, target ? *target : s.uniform(0.0, 2.0));
    case Family::scaled_bernoulli:
      return scaled_bernoulli_with_delta(mean, target ? *target : s.uniform(0.0, 2.0));
    case Family::mixed: {
      std::vector<Family> pool{Family::deterministic, Family::uniform, Family::two_point};
      if (!target || *target >= 1.0) pool.push_back(Family::exponential);
      const auto pick = pool[static_cast<std::size_t>(s.uniform_int(0, pool.size() - 1))];
      if (pick == Family::uniform && target) {
        return uniform_with_delta(mean, std::min(*target, kUniformMaxDelta));
      }
      return draw_distribution(pick, mean, target, s);
    }
  }
  return Distribution::deterministic(mean);
}

double even_in(double lo, double hi, Stream& s, double floor_value) {
  auto a = static_cast<std::int64_t>(std::ceil(std::max(lo, floor_value) / 2.0));
  auto b = static_cast<std::int64_t>(std::floor(hi / 2.0));
  if (b < a) throw InvalidArgument("range contains no admissible even integer");
  return 2.0 * static_cast<double>(s.uniform_int(a, b));
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.jobs < 1 || spec.machines < 1) throw InvalidArgument("need n >= 1 and m >= 1");
  if (!(spec.weight_lo >= 0.0 && spec.weight_lo <= spec.weight_hi)) {
    throw InvalidArgument("bad weight range");
  }
  if (!(spec.release_lo >= 0.0 && spec.release_lo <= spec.release_hi)) {
    throw InvalidArgument("bad release range");
  }
  if (!(spec.mean_lo > 0.0 && spec.mean_lo <= spec.mean_hi)) throw InvalidArgument("bad mean range");
  if (spec.delta_target) check_target(spec.family, *spec.delta_target);

  Stream s(seed, 0, StreamPurpose::generator);
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < spec.jobs; ++j) {
    Job job;
    job.id = static_cast<int>(j) + 1;
    if (spec.even_integer) {
      job.weight = static_cast<double>(s.uniform_int(static_cast<std::int64_t>(std::ceil(spec.weight_lo)),
                                                     static_cast<std::int64_t>(std::floor(spec.weight_hi))));
      job.release = even_in(spec.release_lo, spec.release_hi, s, 0.0);
    } else {
      job.weight = s.uniform(spec.weight_lo, spec.weight_hi);
      job.release = s.uniform(spec.release_lo, spec.release_hi);
    }
    jobs.push_back(job);
  }
  std::vector<std::vector<Distribution>> dists(spec.machines);
  for (std::size_t i = 0; i < spec.machines; ++i) {
    for (std::size_t j = 0; j < spec.jobs; ++j) {
      const double mean =
          spec.even_integer ? even_in(spec.mean_lo, spec.mean_hi, s, 2.0) : s.uniform(spec.mean_lo, spec.mean_hi);
      dists[i].push_back(draw_distribution(spec.family, mean, spec.delta_target, s));
    }
  }
  return Instance(spec.machines, std::move(jobs), std::move(dists));
}

}  // namespace sos
