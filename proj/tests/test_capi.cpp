// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "sos/sos.h"

TEST_CASE("instance lifecycle") {
  sos_generator_spec spec;
  sos_generator_spec_init(&spec);
  spec.jobs = 5;
  spec.machines = 2;
  spec.family = "exponential";
  sos_instance* inst = nullptr;
  REQUIRE(sos_instance_generate(&spec, 7, &inst) == SOS_OK);

  size_t m = 0, n = 0;
  double delta = 0;
  CHECK(sos_instance_shape(inst, &m, &n, &delta) == SOS_OK);
  CHECK(m == 2);
  CHECK(n == 5);
  CHECK(delta == doctest::Approx(1.0));

  char* json = nullptr;
  REQUIRE(sos_instance_to_json(inst, &json) == SOS_OK);
  sos_instance* back = nullptr;
  CHECK(sos_instance_from_json(json, &back) == SOS_OK);
  char* again = nullptr;
  CHECK(sos_instance_to_json(back, &again) == SOS_OK);
  CHECK(std::string(json) == again);
  sos_string_free(json);
  sos_string_free(again);
  sos_instance_free(back);
  sos_instance_free(inst);
  sos_instance_free(nullptr);
}

TEST_CASE("errors are reported per call") {
  sos_instance* inst = nullptr;
  CHECK(sos_instance_from_json("{oops", &inst) == SOS_PARSE_ERROR);
  CHECK(std::strlen(sos_last_error()) > 0);
  CHECK(inst == nullptr);
  CHECK(sos_instance_read_file("/no/such/file.json", &inst) == SOS_IO_ERROR);
  CHECK(sos_instance_from_json(nullptr, &inst) == SOS_INVALID_ARGUMENT);

  sos_generator_spec spec;
  sos_generator_spec_init(&spec);
  spec.family = "deterministic";
  spec.has_delta_target = 1;
  spec.delta_target = 0.5;
  CHECK(sos_instance_generate(&spec, 1, &inst) == SOS_INVALID_ARGUMENT);
  spec.family = "nonsense";
  CHECK(sos_instance_generate(&spec, 1, &inst) == SOS_INVALID_ARGUMENT);
}

TEST_CASE("evaluate") {
  const char* text = R"({"machines": 1, "jobs": [{"id": 1, "weight": 1, "release": 0},
      {"id": 2, "weight": 3, "release": 1}],
      "dists": [[{"kind": "deterministic", "params": [2]}, {"kind": "deterministic", "params": [2]}]]})";
  sos_instance* inst = nullptr;
  REQUIRE(sos_instance_from_json(text, &inst) == SOS_OK);
  sos_policy_spec p{};
  p.name = "dsos";
  sos_report r{};
  REQUIRE(sos_evaluate(inst, &p, "surrogate", 10, 0, 400, 1, &r) == SOS_OK);
  CHECK(r.mean == doctest::Approx(18.9443).epsilon(1e-5));
  CHECK(r.comparator_value == 12.0);
  CHECK(r.pass == 1);
  CHECK(std::string(r.policy) == "dsos");
  CHECK(std::string(r.comparator) == "surrogate");

  char* row = nullptr;
  REQUIRE(sos_results_csv("we1", &r, 1, &row) == SOS_OK);
  CHECK(std::string(row).rfind("instance_id,", 0) == 0);
  sos_string_free(row);

  p.name = "rsos";
  p.density = "fdelta";
  p.has_delta = 1;
  p.delta = 1.0;
  double c = 0;
  CHECK(sos_policy_nominal_guarantee(&p, &c) == SOS_OK);
  CHECK(c == doctest::Approx(1.839).epsilon(0.001 / 1.839));
  CHECK(sos_evaluate(inst, &p, "mean-busy", 10, 0, 400, 1, &r) == SOS_INVALID_ARGUMENT);
  p.name = "bogus";
  CHECK(sos_evaluate(inst, &p, "auto", 10, 0, 400, 1, &r) == SOS_INVALID_ARGUMENT);

  sos_certificate_report cert{};
  CHECK(sos_certify(inst, 400, &cert) == SOS_OK);
  CHECK(cert.certified == 1);
  double lp = 0;
  CHECK(sos_lp_value(inst, 400, &lp) == SOS_OK);
  CHECK(lp == doctest::Approx(cert.lp_value));
  CHECK(sos_certify(inst, 1, &cert) == SOS_CAP_EXCEEDED);
  CHECK(sos_last_required_cap() == 10);
  char* mps = nullptr;
  CHECK(sos_lp_export_mps(inst, 400, &mps) == SOS_OK);
  CHECK(std::string(mps).find("ENDATA") != std::string::npos);
  sos_string_free(mps);
  char* trace = nullptr;
  CHECK(sos_assignment_trace_csv(inst, &trace) == SOS_OK);
  CHECK(std::string(trace).rfind("job_id,machine,cost,chosen\n", 0) == 0);
  sos_string_free(trace);
  sos_instance_free(inst);
}

TEST_CASE("scalar helpers") {
  CHECK(sos_g(0.0) == 1.0);
  CHECK(sos_g(4.0) == doctest::Approx(0.2));
  CHECK(std::isnan(sos_g(-1.0)));
  double D, gamma, theta, c;
  CHECK(sos_fdelta_params(0.0, &D, &gamma, &theta, &c) == SOS_OK);
  CHECK(D == 1.0);
  CHECK(c == doctest::Approx(1.6853).epsilon(0.0005 / 1.6853));
  double a;
  CHECK(sos_alpha_star_delta(0.0, &a, &c) == SOS_OK);
  CHECK(c == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(sos_alpha_star_nbue(1.0, &a, &c) == SOS_OK);
  CHECK(c == doctest::Approx(2.452).epsilon(0.001 / 2.452));
  CHECK(sos_alpha_star_nbue(0.2, &a, &c) == SOS_INVALID_ARGUMENT);
  CHECK(sos_misspecified_guarantee(0.0, INFINITY, "sos-alpha", &c) == SOS_OK);
  CHECK(c == doctest::Approx(2 + 1 / std::sqrt(2.0)));
  CHECK(sos_misspecified_guarantee(0.0, 1.0, "other", &c) == SOS_INVALID_ARGUMENT);
  const double x = sos_gmux_crossing();
  CHECK(x > 0.0);
  CHECK(x < 1.0);
  char* csv = nullptr;
  CHECK(sos_curves_csv("unrelated", 0.0, 1.0, 0.5, &csv) == SOS_OK);
  sos_string_free(csv);
  CHECK(sos_curves_csv("other", 0.0, 1.0, 0.5, &csv) == SOS_INVALID_ARGUMENT);
  CHECK(std::string(sos_version()).size() > 0);
}
