#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sos/density.hpp"
#include "sos/error.hpp"
#include "sos/instance_json.hpp"
#include "support.hpp"

using namespace sos;

TEST_CASE("distribution moments") {
  const auto d = Distribution::deterministic(4.0);
  CHECK(d.mean() == 4.0);
  CHECK(d.squared_cv() == 0.0);

  const auto e = Distribution::exponential(1.0);
  CHECK(e.mean() == 1.0);
  CHECK(e.squared_cv() == doctest::Approx(1.0).epsilon(1e-15));

  for (double N : {2.0, 10.0, 1000.0}) {
    const auto t = Distribution::two_point(1.0, 0.5, N);
    CHECK(t.squared_cv() == doctest::Approx((N - 1) * (N - 1) / ((N + 1) * (N + 1))).epsilon(1e-12));
  }

  const auto u = Distribution::uniform(0.0, 2.0);
  CHECK(u.mean() == 1.0);
  CHECK(u.variance() == doctest::Approx(1.0 / 3.0));

  const auto b = Distribution::scaled_bernoulli(4.0, 0.25);
  CHECK(b.mean() == 1.0);
  CHECK(b.squared_cv() == doctest::Approx(3.0));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(Distribution::deterministic(0.0), InvalidArgument);
  CHECK_THROWS_AS(Distribution::exponential(-1.0), InvalidArgument);
  CHECK_THROWS_AS(Distribution::uniform(2.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Distribution::two_point(1.0, 1.5, 2.0), InvalidArgument);
  CHECK_THROWS_AS(Distribution::deterministic(std::nan("")), InvalidArgument);
}

TEST_CASE("overshoot closed forms") {
  CHECK(Distribution::deterministic(3.0).overshoot(0.25) == doctest::Approx(2.25));
  CHECK(Distribution::exponential(1.0).overshoot(0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(Distribution::uniform(0.0, 2.0).overshoot(0.5) == doctest::Approx(0.5625).epsilon(1e-14));
  CHECK_THROWS_AS(Distribution::exponential(1.0).overshoot(1.0), InvalidArgument);
}

TEST_CASE("overshoot matches Monte Carlo") {
  Stream s(99);
  const Distribution ds[] = {Distribution::uniform(1.0, 5.0), Distribution::two_point(0.5, 0.3, 4.0),
                             Distribution::scaled_bernoulli(3.0, 0.4), Distribution::exponential(2.0)};
  for (const auto& d : ds) {
    double acc = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) acc += std::max(0.0, d.sample(s) - 0.4 * d.mean());
    CHECK(acc / n == doctest::Approx(d.overshoot(0.4)).epsilon(0.02));
  }
}

namespace {

Distribution random_distribution(Stream& s, int family) {
  switch (family) {
    case 0:
      return Distribution::deterministic(s.uniform(0.1, 10.0));
    case 1:
      return Distribution::exponential(s.uniform(0.1, 10.0));
    case 2: {
      const double lo = s.uniform(0.0, 5.0);
      return Distribution::uniform(lo, lo + s.uniform(0.01, 10.0));
    }
    case 3: {
      const double x1 = s.uniform(0.0, 5.0);
      return Distribution::two_point(x1, s.uniform(0.01, 0.99), x1 + s.uniform(0.01, 50.0));
    }
    default:
      return Distribution::scaled_bernoulli(s.uniform(0.1, 10.0), s.uniform(0.01, 1.0));
  }
}

}  // namespace

TEST_CASE("overshoot bound through the squared CV") {
  Stream s(2024);
  for (int family = 0; family < 5; ++family) {
    for (int k = 0; k < 200; ++k) {
      const auto d = random_distribution(s, family);
      const double beta = s.uniform(0.0, 0.999);
      const double bound = (1.0 - g_of_delta(d.squared_cv()) * beta) * d.mean();
      CHECK(d.overshoot(beta) <= bound + 1e-9);
    }
  }
}

TEST_CASE("overshoot bound for NBUE laws") {
  Stream s(77);
  for (int family = 0; family < 5; ++family) {
    for (int k = 0; k < 200; ++k) {
      const auto d = random_distribution(s, family);
      const double delta = d.nbue_delta();
      const double beta = s.uniform(0.0, 0.999);
      CHECK(d.overshoot(beta) <= delta / (delta + beta) * d.mean() + 1e-9);
    }
  }
  CHECK(Distribution::deterministic(2.0).nbue_delta() == 1.0);
  CHECK(Distribution::exponential(2.0).nbue_delta() == 1.0);
  CHECK(Distribution::uniform(0.0, 2.0).nbue_delta() == 1.0);
  CHECK(Distribution::scaled_bernoulli(2.0, 0.25).nbue_delta() == 4.0);
}

TEST_CASE("two-point NBUE delta agrees with a residual-life scan") {
  Stream s(5);
  for (int k = 0; k < 100; ++k) {
    const double x1 = s.uniform(0.0, 3.0), x2 = x1 + s.uniform(0.1, 10.0), q = s.uniform(0.05, 0.95);
    const auto d = Distribution::two_point(x1, q, x2);
    double worst = 0.0;
    for (int step = 0; step <= 4000; ++step) {
      const double t = x2 * step / 4000.0;
      double mass = 0.0, excess = 0.0;
      if (x1 > t) mass += q, excess += q * (x1 - t);
      if (x2 > t) mass += 1 - q, excess += (1 - q) * (x2 - t);
      if (mass > 0) worst = std::max(worst, excess / mass);
    }
    CHECK(worst / d.mean() <= d.nbue_delta() + 1e-12);
    CHECK(worst / d.mean() >= d.nbue_delta() - 1e-2 * x2 / d.mean());
  }
}

TEST_CASE("instance delta") {
  std::vector<Job> jobs{{1, 1, 0}, {2, 1, 0}};
  Instance det(1, jobs, {{Distribution::deterministic(1), Distribution::deterministic(2)}});
  CHECK(det.delta() == 0.0);
  Instance ex(1, jobs, {{Distribution::exponential(1), Distribution::exponential(2)}});
  CHECK(ex.delta() == doctest::Approx(1.0));
  Instance mix(1, jobs, {{Distribution::deterministic(1), Distribution::exponential(2)}});
  CHECK(mix.delta() == doctest::Approx(1.0));
}

TEST_CASE("instance validation") {
  std::vector<Job> jobs{{1, 1, 0}, {1, 1, 0}};
  CHECK_THROWS_AS(Instance(1, jobs, {{Distribution::deterministic(1), Distribution::deterministic(1)}}),
                  InvalidArgument);
  CHECK_THROWS_AS(Instance(1, {{1, -1, 0}}, {{Distribution::deterministic(1)}}), InvalidArgument);
  CHECK_THROWS_AS(Instance(1, {{1, 1, -2}}, {{Distribution::deterministic(1)}}), InvalidArgument);
  CHECK_THROWS_AS(Instance(2, {{1, 1, 0}}, {{Distribution::deterministic(1)}}), InvalidArgument);
}

TEST_CASE("realizations") {
  const auto inst = test::mixed_instance(3, 8, 2);
  const auto a = sample_realization(inst, 11, 4);
  const auto b = sample_realization(inst, 11, 4);
  CHECK(a.p == b.p);
  const auto c = sample_realization(inst, 11, 5);
  CHECK(a.p != c.p);

  std::vector<Job> jobs{{1, 1, 0}};
  Instance det(1, jobs, {{Distribution::deterministic(3.5)}});
  for (std::uint64_t seed : {0u, 1u, 99u}) CHECK(sample_realization(det, seed, 0).at(0, 0) == 3.5);

  Instance ex(1, jobs, {{Distribution::exponential(1.0)}});
  double acc = 0.0;
  for (std::uint64_t r = 0; r < 100000; ++r) acc += sample_realization(ex, 1, r).at(0, 0);
  CHECK(acc / 1e5 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("generator") {
  GeneratorSpec spec;
  spec.jobs = 1;
  spec.machines = 1;
  spec.family = Family::deterministic;
  CHECK(generate_instance(spec, 1).size() == 1);

  spec.jobs = 6;
  spec.machines = 3;
  spec.family = Family::exponential;
  spec.delta_target = 1.0;
  const auto a = generate_instance(spec, 42);
  CHECK(a.delta() == doctest::Approx(1.0));
  CHECK(a == generate_instance(spec, 42));
  CHECK(!(a == generate_instance(spec, 43)));

  spec.family = Family::deterministic;
  spec.delta_target = 0.5;
  CHECK_THROWS_AS(generate_instance(spec, 1), InvalidArgument);

  for (auto fam : {Family::uniform, Family::two_point, Family::scaled_bernoulli, Family::mixed}) {
    spec.family = fam;
    spec.delta_target = 0.3;
    const auto inst = generate_instance(spec, 9);
    CHECK(inst.delta() <= 0.3 + 1e-12);
    if (fam != Family::mixed) CHECK(inst.delta() == doctest::Approx(0.3));
  }

  spec.family = Family::exponential;
  spec.delta_target.reset();
  spec.even_integer = true;
  const auto e = generate_instance(spec, 3);
  for (std::size_t j = 0; j < e.size(); ++j) {
    CHECK(std::fmod(e.job(j).release, 2.0) == 0.0);
    for (std::size_t i = 0; i < e.machines(); ++i) CHECK(std::fmod(e.mean(i, j), 2.0) == 0.0);
  }
}

TEST_CASE("json round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = test::mixed_instance(seed, 7, 3);
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
  }
  GeneratorSpec spec;
  spec.family = Family::scaled_bernoulli;
  spec.machines = 2;
  const auto inst = generate_instance(spec, 8);
  CHECK(instance_from_json(instance_to_json(inst)) == inst);
}

TEST_CASE("json errors") {
  CHECK_THROWS_AS(instance_from_json("{"), ParseError);
  CHECK_THROWS_AS(instance_from_json(R"({"machines": 1, "jobs": []})"), ParseError);
  CHECK_THROWS_AS(read_instance("/nonexistent/instance.json"), Error);
}

TEST_CASE("atomic write") {
  const auto dir = std::filesystem::temp_directory_path() / "sos_core_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.json";
  const auto inst = test::mixed_instance(1, 3, 1);
  write_text_atomically(path, instance_to_json(inst));
  CHECK(read_instance(path) == inst);
  std::filesystem::remove_all(dir);
}
