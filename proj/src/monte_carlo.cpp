#include "sos/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "sos/error.hpp"
#include "sos/lp_model.hpp"

namespace sos {

namespace {

constexpr double kZ99 = 2.5758293035489004;

double neumaier_sum(const std::vector<double>& v) {
  double sum = 0.0, comp = 0.0;
  for (double x : v) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

McStats summarize(std::vector<double> values) {
  McStats s;
  s.reps = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.mean = neumaier_sum(values) / static_cast<double>(values.size());
  if (values.size() >= 2) {
    std::vector<double> sq;
    sq.reserve(values.size());
    for (double x : values) sq.push_back((x - s.mean) * (x - s.mean));
    std::sort(sq.begin(), sq.end());
    s.sd = std::sqrt(neumaier_sum(sq) / static_cast<double>(values.size() - 1));
    s.std_error = s.sd / std::sqrt(static_cast<double>(values.size()));
    s.ci99 = kZ99 * s.std_error;
  }
  return s;
}

unsigned default_threads() {
  if (const char* env = std::getenv("SOS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

McResult monte_carlo(const PolicyRunner& runner, std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (reps < 1) throw InvalidArgument("need at least one replication");
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  std::vector<double> obj(reps), busy(reps);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto real = sample_realization(runner.instance(), seed, r);
      const auto run = runner.run(real, seed, r);
      obj[r] = run.objective;
      busy[r] = run.mean_busy;
    }
  };
  if (threads <= 1) {
    work(0, reps);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (std::size_t b = 0; b < reps; b += chunk) pool.emplace_back(work, b, std::min(reps, b + chunk));
  }
  return {summarize(std::move(obj)), summarize(std::move(busy))};
}

Comparator comparator_from_string(const std::string& name) {
  if (name == "auto") return Comparator::automatic;
  if (name == "surrogate") return Comparator::surrogate;
  if (name == "mean-busy") return Comparator::mean_busy;
  if (name == "lp") return Comparator::lp;
  throw InvalidArgument("unknown comparator '" + name + "' (auto, surrogate, mean-busy, lp)");
}

std::string to_string(Comparator c) {
  switch (c) {
    case Comparator::automatic:
      return "auto";
    case Comparator::surrogate:
      return "surrogate";
    case Comparator::mean_busy:
      return "mean-busy";
    case Comparator::lp:
      return "lp";
  }
  return "unknown";
}

RatioReport empirical_ratio_report(const Instance& inst, const PolicySpec& spec, Comparator comparator,
                                   std::size_t reps, std::uint64_t seed, long long lp_cap, unsigned threads) {
  const PolicyRunner runner(inst, spec);
  const auto& policy = runner.policy();
  if (comparator == Comparator::automatic) {
    const bool tuned_density = policy.randomized() && policy.density().kind() != Density::Kind::uniform;
    comparator = (spec.ga || tuned_density) ? Comparator::surrogate : Comparator::mean_busy;
  }

  RatioReport rep;
  rep.policy = spec.name();
  rep.comparator = comparator;
  rep.seed = seed;
  rep.instance_delta = inst.delta();
  rep.instance_nbue = instance_nbue_delta(inst);

  switch (comparator) {
    case Comparator::surrogate:
      rep.comparator_value = runner.surrogate_total();
      rep.guarantee = policy.surrogate_guarantee(rep.instance_delta, rep.instance_nbue);
      break;
    case Comparator::mean_busy:
      rep.comparator_value = runner.weighted_mean_busy();
      rep.guarantee = policy.mean_busy_guarantee(rep.instance_delta, rep.instance_nbue);
      if (std::isnan(rep.guarantee)) {
        throw InvalidArgument("no mean-busy-time guarantee for " + rep.policy + "; use --comparator surrogate");
      }
      break;
    case Comparator::lp:
      rep.comparator_value = solve_lpr(build_lpr(inst, lp_cap)).value;
      rep.guarantee = 4.0 * policy.surrogate_guarantee(rep.instance_delta, rep.instance_nbue);
      break;
    case Comparator::automatic:
      break;
  }

  const auto mc = monte_carlo(runner, reps, seed, threads);
  rep.stats = comparator == Comparator::mean_busy ? mc.mean_busy : mc.objective;
  if (rep.comparator_value == 0.0) {
    rep.degenerate = true;
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.ratio_ci99 = std::numeric_limits<double>::quiet_NaN();
    rep.pass = true;
    return rep;
  }
  rep.ratio = rep.stats.mean / rep.comparator_value;
  rep.ratio_ci99 = rep.stats.ci99 / rep.comparator_value;
  const double lower = (rep.stats.mean - 3.0 * rep.stats.std_error) / rep.comparator_value;
  rep.pass = lower <= rep.guarantee * (1.0 + 1e-12);
  return rep;
}

std::string results_csv_header() {
  return "instance_id,policy,R,seed,mean,stderr,comparator,ratio,guarantee,pass\n";
}

std::string results_csv_row(const std::string& instance_id, const RatioReport& r) {
  std::ostringstream os;
  os.precision(12);
  os << instance_id << ',' << r.policy << ',' << r.stats.reps << ',' << r.seed << ',' << r.stats.mean << ','
     << r.stats.std_error << ',' << r.comparator_value << ',' << r.ratio << ',' << r.guarantee << ','
     << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace sos
