#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "sos/error.hpp"
#include "sos/guarantees.hpp"
#include "support.hpp"

using namespace sos;

namespace {

double row(const std::vector<GuaranteeRow>& rows, const std::string& policy,
           ComparatorClass cls = ComparatorClass::all_policies) {
  for (const auto& r : rows)
    if (r.policy == policy && r.cls == cls) return r.guarantee;
  FAIL("missing row " << policy);
  return 0.0;
}

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("unrelated spot values") {
  CHECK(row(unrelated_guarantees(0.0), "gmux") == doctest::Approx(368.0 / 51.0).epsilon(1e-12));
  CHECK(row(unrelated_guarantees(0.0), "ga-rsos") == 8.0);
  CHECK(row(unrelated_guarantees(1.0), "ga-rsos") == 12.0);
  CHECK(row(unrelated_guarantees(2.0), "ga-rsos") == 16.0);
  CHECK(row(unrelated_guarantees(0.0), "randomized-optimized") == doctest::Approx(4 * 1.6853).epsilon(1e-3 / 6.74));
  CHECK(row(unrelated_guarantees(0.0), "ga-dsos") == doctest::Approx(2 * (3 + std::sqrt(5.0))));
  CHECK(row(unrelated_guarantees(5.0), "ga-rsos", ComparatorClass::fixed_assignment) == 8.0);
}

TEST_CASE("dominance, continuity and the deterministic gap") {
  const double phi1 = test::kPhi + 1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double d = 2.0 * k / 1000.0;
    const auto rows = unrelated_guarantees(d);
    CHECK(row(rows, "randomized-optimized") <= 8.0 + 4.0 * d + 1e-12);
    CHECK(row(rows, "deterministic-optimized") <= (3.0 + std::sqrt(5.0)) * (2.0 + d) + 1e-12);
    CHECK(deterministic_optimized(d) * (4 + 2 * d) <= phi1 * (4 + 2 * d) - (5 - std::sqrt(5.0)) / 10 + 1e-12);
    if (d > gmux_crossing() + 1e-9) CHECK(row(rows, "ga-rsos") < row(rows, "gmux"));
  }
  const double x = gmux_crossing();
  CHECK(x > 0.0);
  CHECK(x < 1.0);
  CHECK(row(unrelated_guarantees(x), "gmux") == doctest::Approx(8.0 + 4.0 * x).epsilon(1e-12));
  CHECK(row(unrelated_guarantees(0.0), "gmux") < 8.0);
  MESSAGE("GA-RSOS and GMUX cross at Delta = " << x);

  const auto below = unrelated_guarantees(1.0 - 1e-12), above = unrelated_guarantees(1.0 + 1e-12);
  for (std::size_t k = 0; k < below.size(); ++k) CHECK(std::abs(below[k].guarantee - above[k].guarantee) <= 1e-9);
}

TEST_CASE("single machine table") {
  const auto rows = single_machine_guarantees(0.0);
  CHECK(row(rows, "rsos") == 2.0);
  CHECK(row(rows, "dsos") == doctest::Approx(test::kPhi + 1));
  CHECK(row(rows, "randomized-optimized") == doctest::Approx(1.6853).epsilon(0.0005 / 1.6853));
  CHECK(row(rows, "deterministic-optimized") == doctest::Approx(1 + std::sqrt(2.0)));
}

TEST_CASE("mis-specified parameter") {
  for (double d : {0.0, 0.5, 1.0, 2.0}) {
    CHECK(misspecified_guarantee(d, d, MisspecifiedPolicy::rsos_fdelta) ==
          doctest::Approx(randomized_optimized(d)).epsilon(1e-6));
    CHECK(misspecified_guarantee(d, d, MisspecifiedPolicy::sos_alpha) ==
          doctest::Approx(deterministic_optimized(d)).epsilon(1e-12));
  }
  CHECK(misspecified_guarantee(0.0, kInf, MisspecifiedPolicy::rsos_fdelta) == doctest::Approx(2.223).epsilon(0.001 / 2.223));
  CHECK(std::abs(misspecified_guarantee(0.0, kInf, MisspecifiedPolicy::sos_alpha) - (2 + 1 / std::sqrt(2.0))) <= 1e-9);
  CHECK_THROWS_AS(misspecified_guarantee(-1.0, 0.0, MisspecifiedPolicy::sos_alpha), InvalidArgument);
}

TEST_CASE("nbue table") {
  const auto one = nbue_guarantees(1.0);
  CHECK(row(one, "deterministic-direct") == doctest::Approx(2.452).epsilon(0.001 / 2.452));
  CHECK(row(one, "deterministic-via-cv") == doctest::Approx(2.5));
  const auto big = nbue_guarantees(1e12);
  CHECK(row(big, "deterministic-direct") == doctest::Approx(test::kPhi + 1).epsilon(1e-6));
  CHECK(row(big, "deterministic-via-cv") == doctest::Approx(test::kPhi + 1).epsilon(1e-6));
  CHECK_THROWS_AS(nbue_guarantees(0.5), InvalidArgument);
}

TEST_CASE("curve tables") {
  const auto csv = unrelated_curves_csv(0.0, 2.0, 0.001);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "delta,policy,guarantee,class");
  std::size_t ga_rsos = 0;
  while (std::getline(is, line))
    if (line.find(",ga-rsos,") != std::string::npos && line.find(",all") != std::string::npos) ++ga_rsos;
  CHECK(ga_rsos == 2001);
  CHECK(csv.find("\n2,ga-rsos,16,all\n") != std::string::npos);
  CHECK(single_machine_curves_csv(0.0, 0.0, 0.1).find("0,randomized-optimized,1.68524") != std::string::npos);
  CHECK(misspecified_curves_csv(0.0, 1.0, 0.5).rfind("delta_bar,delta,policy,guarantee,class\n", 0) == 0);
  CHECK_THROWS_AS(unrelated_curves_csv(-1.0, 2.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(unrelated_curves_csv(0.0, 11.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(unrelated_curves_csv(0.0, 2.0, 0.0), InvalidArgument);
}
