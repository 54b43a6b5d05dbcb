#include <doctest.h>

#include <array>
#include <cmath>

#include "sos/certificate.hpp"
#include "sos/error.hpp"
#include "sos/lower_bounds.hpp"
#include "sos/lp_model.hpp"
#include "sos/simplex.hpp"
#include "support.hpp"

using namespace sos;

namespace {

Instance single(double w, double r, double p) {
  return Instance(1, {{1, w, r}}, {{Distribution::deterministic(p)}});
}

Instance even_instance(std::uint64_t seed, std::size_t n, std::size_t m) {
  GeneratorSpec spec;
  spec.jobs = n;
  spec.machines = m;
  spec.family = Family::mixed;
  spec.even_integer = true;
  spec.mean_lo = 2;
  spec.mean_hi = 8;
  spec.release_hi = 12;
  return generate_instance(spec, seed);
}

Instance scale_times(const Instance& inst, double lambda) {
  std::vector<Job> jobs = inst.jobs();
  for (auto& j : jobs) j.release *= lambda;
  std::vector<std::vector<Distribution>> d(inst.machines());
  for (std::size_t i = 0; i < inst.machines(); ++i)
    for (std::size_t j = 0; j < inst.size(); ++j) d[i].push_back(Distribution::deterministic(lambda * inst.mean(i, j)));
  return Instance(inst.machines(), jobs, d);
}

}  // namespace

TEST_CASE("rationalize") {
  const auto a = rationalize(0.75);
  CHECK(a.num == 3);
  CHECK(a.den == 4);
  const auto b = rationalize(1.0 / 3.0);
  CHECK(b.num == 1);
  CHECK(b.den == 3);
  CHECK(rationalize(6.0).den == 1);
  CHECK_THROWS_AS(rationalize(-1.0), InvalidArgument);
}

TEST_CASE("simplex on small programs") {
  // min -x - y  s.t.  x + 2y <= 4, 3x + y <= 6
  LpProblem lp;
  lp.rhs = {4, 6};
  lp.equality = {false, false};
  lp.columns = {{{0, 1}, {1, 3}}, {{0, 2}, {1, 1}}};
  lp.cost = {-1, -1};
  auto r = solve_lp(lp);
  CHECK(r.objective == doctest::Approx(-2.8).epsilon(1e-12));
  CHECK(r.x[0] == doctest::Approx(1.6));
  CHECK(r.x[1] == doctest::Approx(1.2));
  CHECK(r.dual_objective == doctest::Approx(r.objective).epsilon(1e-12));
  for (double d : r.duals) CHECK(d <= 1e-12);

  // min 2x + 3y  s.t.  x + y = 1
  LpProblem eq;
  eq.rhs = {1};
  eq.equality = {true};
  eq.columns = {{{0, 1}}, {{0, 1}}};
  eq.cost = {2, 3};
  r = solve_lp(eq);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.duals[0] == doctest::Approx(2.0));

  // x = 2 and x <= 1 is infeasible
  LpProblem bad;
  bad.rhs = {2, 1};
  bad.equality = {true, false};
  bad.columns = {{{0, 1}, {1, 1}}};
  bad.cost = {1};
  CHECK_THROWS_AS(solve_lp(bad), NumericalError);
}

TEST_CASE("single-job relaxation") {
  CHECK(solve_lpr(build_lpr(single(1, 0, 2))).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(solve_lpr(build_lpr(single(1, 0, 4))).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(solve_lpr(build_lpr(single(3, 2, 6))).value == doctest::Approx(3.0 * (2 + 6)).epsilon(1e-12));
  const auto model = build_lpr(single(1, 0, 2));
  CHECK(model.sigma == 1.0);
  CHECK(model.horizon == 2);
  const auto sol = solve_lpr(model);
  REQUIRE(sol.y.size() == 2);
  CHECK(sol.y[0] == doctest::Approx(1.0));
  CHECK(sol.y[1] == doctest::Approx(1.0));
}

TEST_CASE("model layout") {
  const auto inst = even_instance(3, 4, 2);
  const auto model = build_lpr(inst);
  CHECK(model.rows() == 4 + 2 * static_cast<std::size_t>(model.horizon));
  for (const auto& c : model.columns) CHECK(c.t >= model.release[c.job]);
  CHECK(model.capacity_row(1, 0) == 4 + static_cast<std::size_t>(model.horizon));
  const auto lp = model.to_problem();
  CHECK(lp.rows() == model.rows());
  CHECK(lp.columns.size() == model.columns.size());
}

TEST_CASE("horizon cap") {
  const auto inst = single(1, 100, 3);
  try {
    build_lpr(inst, 10);
    FAIL("expected a refusal");
  } catch (const CapExceeded& e) {
    CHECK(e.required() == build_lpr(inst, 1000).horizon);
  }
}

TEST_CASE("fractional data is rescaled") {
  const auto a = single(1, 0.5, 1.5);
  const auto model = build_lpr(a);
  CHECK(model.sigma == doctest::Approx(4.0));
  CHECK(solve_lpr(model).value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("property: time and weight scaling") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = even_instance(seed, 2 + seed % 5, 1 + seed % 2);
    const double v = solve_lpr(build_lpr(inst)).value;
    for (double lambda : {0.5, 3.0, 1.25}) {
      CHECK(solve_lpr(build_lpr(scale_times(inst, lambda))).value == doctest::Approx(lambda * v).epsilon(1e-9));
    }
  }
}

TEST_CASE("property: relaxation below the surrogate chain and the best list schedule") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t m = 1 + seed % 2, n = 2 + seed % 5;
    const auto inst = even_instance(seed, n, m);
    const auto det = scale_times(inst, 1.0);
    const double lp = solve_lpr(build_lpr(det)).value;
    CHECK(lp <= test::brute_force_list_schedule(det) * (1 + 1e-6));
    const auto rep = certify(det);
    CHECK(rep.certified());
    CHECK(rep.lp_value == doctest::Approx(lp));
  }
}

TEST_CASE("single machine relaxation is at least the mean-busy bound") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = even_instance(seed, 2 + seed % 6, 1);
    std::vector<VirtualJob> jobs;
    for (std::size_t j = 0; j < inst.size(); ++j)
      jobs.push_back({inst.job(j).id, inst.job(j).weight, inst.job(j).release, inst.mean(0, j)});
    std::stable_sort(jobs.begin(), jobs.end(), [](auto& a, auto& b) { return a.release < b.release; });
    const double surrogate = single_machine_lower_bound(jobs);
    const double lp = solve_lpr(build_lpr(inst)).value;
    CHECK(surrogate <= 4.0 * lp * (1 + 1e-9));
  }
}

TEST_CASE("certificate") {
  const auto inst = even_instance(11, 8, 3);
  const auto model = build_lpr(inst);
  const auto run = greedy_assign(scaled_instance(model));
  const auto cert = build_dual_certificate(run, model);
  const auto lp = solve_lpr(model);
  const auto chk = verify_dual_certificate(cert, model, lp.scaled_value);
  CHECK(chk.feasible);
  CHECK(chk.min_slack >= -1e-9);
  REQUIRE(chk.gap.has_value());
  CHECK(*chk.gap >= -1e-7);
  CHECK(cert.value() >= 0.25 * run.surrogate_total() - 1e-9);

  auto broken = cert;
  broken.psi[0][0] = -1.0;
  CHECK_FALSE(verify_dual_certificate(broken, model).feasible);

  DualCertificate zero{std::vector<double>(model.jobs(), 0.0),
                       std::vector<std::vector<double>>(model.machines, std::vector<double>(model.horizon, 0.0))};
  const auto z = verify_dual_certificate(zero, model);
  CHECK(z.feasible);
  CHECK(z.dual_value == 0.0);
  zero.chi[0] = 1e6;
  CHECK_FALSE(verify_dual_certificate(zero, model).feasible);

  DualCertificate wrong{{1.0}, {}};
  CHECK_THROWS_AS(verify_dual_certificate(wrong, model), InvalidArgument);
  CHECK_THROWS_AS(build_dual_certificate(greedy_assign(even_instance(12, 8, 3)), model), ContractViolation);
}

TEST_CASE("lp duals match the solver") {
  const auto inst = even_instance(5, 6, 2);
  const auto model = build_lpr(inst);
  const auto lp = solve_lpr(model);
  DualCertificate cert{lp.chi, lp.psi};
  const auto chk = verify_dual_certificate(cert, model, lp.scaled_value);
  CHECK(chk.feasible);
  CHECK(std::abs(*chk.gap) <= 1e-7 * std::max(1.0, lp.scaled_value));
}

TEST_CASE("certify single job") {
  const auto rep = certify(single(1, 0, 2));
  CHECK(rep.certified());
  CHECK(rep.lp_value == doctest::Approx(2.0));
  CHECK(rep.surrogate_total == doctest::Approx(2.0));
}

TEST_CASE("mps export") {
  const auto model = build_lpr(single(1, 0, 2));
  const auto mps = export_mps(model);
  CHECK(mps.find("ROWS") != std::string::npos);
  CHECK(mps.find(" E J1") != std::string::npos);
  CHECK(mps.find(" L C0_1") != std::string::npos);
  CHECK(mps.find("Y0_1_0") != std::string::npos);
  CHECK(mps.find("ENDATA") != std::string::npos);
}

TEST_CASE("non-preemptive list policies respect the mean-busy lower bound") {
  Stream s(31);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rep % 4;
    std::vector<VirtualJob> jobs;
    std::vector<std::array<double, 3>> law;  // x1, q, x2
    for (std::size_t k = 0; k < n; ++k) {
      const double x1 = static_cast<double>(s.uniform_int(0, 3)), x2 = x1 + static_cast<double>(s.uniform_int(1, 6));
      const double q = s.uniform(0.1, 0.9);
      law.push_back({x1, q, x2});
      jobs.push_back({static_cast<int>(k + 1), static_cast<double>(s.uniform_int(1, 5)),
                      static_cast<double>(s.uniform_int(0, 6)), q * x1 + (1 - q) * x2});
    }
    std::stable_sort(jobs.begin(), jobs.end(), [](auto& a, auto& b) { return a.release < b.release; });
    const double bound = VirtualSchedule::build(jobs).weighted_mean_busy_time();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double expect = 0.0;
      for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        double prob = 1.0, t = 0.0, v = 0.0;
        for (std::size_t k : order) {
          const int id = jobs[k].id;
          const bool low = mask >> k & 1;
          const auto& L = law[static_cast<std::size_t>(id - 1)];
          const double p = low ? L[0] : L[2];
          prob *= low ? L[1] : 1 - L[1];
          t = std::max(t, jobs[k].release) + p;
          v += jobs[k].weight * (t - 0.5 * p);
        }
        expect += prob * v;
      }
      best = std::min(best, expect);
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(best >= bound - 1e-9 * std::max(1.0, bound));
  }
}
