#include "sos/lp_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sos/error.hpp"

namespace sos {

Rational rationalize(double v, double tol) {
  if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("only finite non-negative times can be scaled");
  const double bound = tol * std::max(1.0, v);
  long double x = v;
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    const long double a = std::floor(x);
    if (a > 1e15L) break;
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > 1000000000LL) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - v) <= bound) {
      return {h1, k1};
    }
    const long double frac = x - a;
    if (frac <= 0.0L) break;
    x = 1.0L / frac;
  }
  if (k1 > 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - v) <= bound) return {h1, k1};
  throw InvalidArgument("time value " + std::to_string(v) + " has no small rational form");
}

namespace {

long long checked_lcm(long long a, long long b) {
  const long long g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a / g) * b;
  if (l > static_cast<__int128>(1000000000000000LL)) {
    throw InvalidArgument("time values need too fine a common grid for the time-indexed model");
  }
  return static_cast<long long>(l);
}

}  // namespace

LprModel build_lpr(const Instance& inst, long long cap) {
  const std::size_t n = inst.size(), m = inst.machines();
  std::vector<Rational> rel(n);
  std::vector<std::vector<Rational>> mu(m, std::vector<Rational>(n));
  long long L = 1;
  for (std::size_t j = 0; j < n; ++j) {
    rel[j] = rationalize(inst.job(j).release);
    L = checked_lcm(L, rel[j].den);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mu[i][j] = rationalize(inst.mean(i, j));
      if (mu[i][j].num == 0) throw InvalidArgument("means must be positive");
      L = checked_lcm(L, mu[i][j].den);
    }
  }
  auto on_grid = [L](const Rational& r) {
    const __int128 v = static_cast<__int128>(r.num) * (L / r.den);
    if (v > static_cast<__int128>(1000000000000000LL)) {
      throw InvalidArgument("scaled time value too large for the time-indexed model");
    }
    return static_cast<long long>(v);
  };
  long long g = 0;
  for (const auto& r : rel) g = std::gcd(g, on_grid(r));
  for (const auto& row : mu) {
    for (const auto& r : row) g = std::gcd(g, on_grid(r));
  }

  LprModel model;
  model.machines = m;
  // Smallest factor making every value an even integer: 2 L / g.
  model.sigma = 2.0 * static_cast<double>(L) / static_cast<double>(g);
  for (std::size_t j = 0; j < n; ++j) {
    model.ids.push_back(inst.job(j).id);
    model.weight.push_back(inst.job(j).weight);
    model.release.push_back(2 * (on_grid(rel[j]) / g));
  }
  model.mean.assign(m, std::vector<long long>(n));
  const long long rmax = n ? *std::max_element(model.release.begin(), model.release.end()) : 0;
  long long T = 0;
  for (std::size_t i = 0; i < m; ++i) {
    long long total = rmax;
    for (std::size_t j = 0; j < n; ++j) {
      model.mean[i][j] = 2 * (on_grid(mu[i][j]) / g);
      total += model.mean[i][j];
    }
    T = std::max(T, total);
  }
  if (T > cap) {
    throw CapExceeded("time-indexed model needs " + std::to_string(T) + " slots, cap is " +
                          std::to_string(cap),
                      T);
  }
  model.horizon = T;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (long long t = model.release[j]; t < T; ++t) model.columns.push_back({i, j, t});
    }
  }
  return model;
}

LpProblem LprModel::to_problem() const {
  LpProblem lp;
  const std::size_t R = rows();
  lp.rhs.assign(R, 1.0);
  lp.equality.assign(R, false);
  for (std::size_t j = 0; j < jobs(); ++j) lp.equality[j] = true;
  lp.columns.reserve(columns.size());
  lp.cost.reserve(columns.size());
  for (const auto& c : columns) {
    const double p = static_cast<double>(mean[c.machine][c.job]);
    lp.columns.push_back({{c.job, 1.0 / p}, {capacity_row(c.machine, c.t), 1.0}});
    lp.cost.push_back(cost(c));
  }
  return lp;
}

Instance scaled_instance(const LprModel& model) {
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < model.jobs(); ++j) {
    jobs.push_back({model.ids[j], model.weight[j], static_cast<double>(model.release[j])});
  }
  std::vector<std::vector<Distribution>> dists(model.machines);
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (std::size_t j = 0; j < model.jobs(); ++j) {
      dists[i].push_back(Distribution::deterministic(static_cast<double>(model.mean[i][j])));
    }
  }
  return Instance(model.machines, std::move(jobs), std::move(dists));
}

LprSolution solve_lpr(const LprModel& model) {
  LprSolution sol;
  if (model.jobs() == 0) {
    sol.psi.assign(model.machines, std::vector<double>(static_cast<std::size_t>(model.horizon), 0.0));
    return sol;
  }
  const auto res = solve_lp(model.to_problem());
  sol.scaled_value = res.objective;
  sol.value = res.objective / model.sigma;
  sol.y = res.x;
  sol.iterations = res.iterations;
  sol.chi.assign(res.duals.begin(), res.duals.begin() + static_cast<std::ptrdiff_t>(model.jobs()));
  sol.psi.assign(model.machines, std::vector<double>(static_cast<std::size_t>(model.horizon)));
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (long long t = 0; t < model.horizon; ++t) {
      sol.psi[i][static_cast<std::size_t>(t)] = -res.duals[model.capacity_row(i, t)];
    }
  }
  return sol;
}

std::string export_mps(const LprModel& model) {
  std::ostringstream os;
  os.precision(17);
  auto cap_name = [](std::size_t i, long long t) {
    return "C" + std::to_string(i) + "_" + std::to_string(t);
  };
  os << "NAME LPR\nROWS\n N COST\n";
  for (std::size_t j = 0; j < model.jobs(); ++j) os << " E J" << model.ids[j] << '\n';
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (long long t = 0; t < model.horizon; ++t) os << " L " << cap_name(i, t) << '\n';
  }
  os << "COLUMNS\n";
  for (const auto& c : model.columns) {
    const std::string name =
        "Y" + std::to_string(c.machine) + "_" + std::to_string(model.ids[c.job]) + "_" + std::to_string(c.t);
    os << ' ' << name << " COST " << model.cost(c) << '\n';
    os << ' ' << name << " J" << model.ids[c.job] << ' '
       << 1.0 / static_cast<double>(model.mean[c.machine][c.job]) << '\n';
    os << ' ' << name << ' ' << cap_name(c.machine, c.t) << " 1\n";
  }
  os << "RHS\n";
  for (std::size_t j = 0; j < model.jobs(); ++j) os << " RHS J" << model.ids[j] << " 1\n";
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (long long t = 0; t < model.horizon; ++t) os << " RHS " << cap_name(i, t) << " 1\n";
  }
  os << "ENDATA\n";
  return os.str();
}

}  // namespace sos
