#include "sos/sos.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "sos/certificate.hpp"
#include "sos/error.hpp"
#include "sos/guarantees.hpp"
#include "sos/instance_json.hpp"
#include "sos/monte_carlo.hpp"

struct sos_instance {
  sos::Instance inst;
};

namespace {

thread_local std::string g_error;
thread_local long long g_required = 0;

sos_status status_of(sos::Errc code) {
  switch (code) {
    case sos::Errc::invalid_argument:
      return SOS_INVALID_ARGUMENT;
    case sos::Errc::parse:
      return SOS_PARSE_ERROR;
    case sos::Errc::io:
      return SOS_IO_ERROR;
    case sos::Errc::numerical:
      return SOS_NUMERICAL_ERROR;
    case sos::Errc::cap_exceeded:
      return SOS_CAP_EXCEEDED;
    case sos::Errc::contract:
      return SOS_CONTRACT_VIOLATION;
  }
  return SOS_INTERNAL_ERROR;
}

template <class F>
sos_status guarded(F&& f) {
  try {
    g_error.clear();
    f();
    return SOS_OK;
  } catch (const sos::CapExceeded& e) {
    g_error = e.what();
    g_required = e.required();
    return SOS_CAP_EXCEEDED;
  } catch (const sos::Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return SOS_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_error = e.what();
    return SOS_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw sos::InvalidArgument(std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_text(char* dst, std::size_t cap, const std::string& s) {
  const std::size_t n = std::min(cap - 1, s.size());
  std::memcpy(dst, s.data(), n);
  dst[n] = '\0';
}

sos::PolicySpec to_spec(const sos_policy_spec* p) {
  require(p, "policy");
  require(p->name, "policy name");
  auto opt = [](int has, double v) { return has ? std::optional<double>(v) : std::nullopt; };
  std::optional<std::string> density;
  if (p->density) density = p->density;
  return sos::PolicySpec::parse(p->name, opt(p->has_alpha, p->alpha), opt(p->has_delta, p->delta),
                                opt(p->has_nbue_delta, p->nbue_delta), density);
}

}  // namespace

extern "C" {

const char* sos_version(void) { return "0.1.0"; }
const char* sos_last_error(void) { return g_error.c_str(); }
long long sos_last_required_cap(void) { return g_required; }
void sos_string_free(char* s) { std::free(s); }

sos_status sos_write_text_file(const char* path, const char* text) {
  return guarded([&] {
    require(path, "path");
    require(text, "text");
    sos::write_text_atomically(path, text);
  });
}

sos_status sos_instance_read_file(const char* path, sos_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new sos_instance{sos::read_instance(path)};
  });
}

sos_status sos_instance_from_json(const char* text, sos_instance** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new sos_instance{sos::instance_from_json(text)};
  });
}

sos_status sos_instance_to_json(const sos_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup(sos::instance_to_json(inst->inst));
  });
}

void sos_instance_free(sos_instance* inst) { delete inst; }

sos_status sos_instance_shape(const sos_instance* inst, size_t* machines, size_t* jobs, double* delta) {
  return guarded([&] {
    require(inst, "instance");
    if (machines) *machines = inst->inst.machines();
    if (jobs) *jobs = inst->inst.size();
    if (delta) *delta = inst->inst.delta();
  });
}

void sos_generator_spec_init(sos_generator_spec* spec) {
  if (!spec) return;
  const sos::GeneratorSpec d;
  spec->jobs = d.jobs;
  spec->machines = d.machines;
  spec->weight_lo = d.weight_lo;
  spec->weight_hi = d.weight_hi;
  spec->release_lo = d.release_lo;
  spec->release_hi = d.release_hi;
  spec->mean_lo = d.mean_lo;
  spec->mean_hi = d.mean_hi;
  spec->family = "exponential";
  spec->has_delta_target = 0;
  spec->delta_target = 0.0;
  spec->even_integer = 0;
}

sos_status sos_instance_generate(const sos_generator_spec* spec, uint64_t seed, sos_instance** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    sos::GeneratorSpec g;
    g.jobs = spec->jobs;
    g.machines = spec->machines;
    g.weight_lo = spec->weight_lo;
    g.weight_hi = spec->weight_hi;
    g.release_lo = spec->release_lo;
    g.release_hi = spec->release_hi;
    g.mean_lo = spec->mean_lo;
    g.mean_hi = spec->mean_hi;
    g.family = sos::family_from_string(spec->family ? spec->family : "exponential");
    if (spec->has_delta_target) g.delta_target = spec->delta_target;
    g.even_integer = spec->even_integer != 0;
    *out = new sos_instance{sos::generate_instance(g, seed)};
  });
}

sos_status sos_evaluate(const sos_instance* inst, const sos_policy_spec* policy, const char* comparator,
                        size_t reps, uint64_t seed, long long lp_cap, unsigned threads, sos_report* out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const auto spec = to_spec(policy);
    const auto cmp = sos::comparator_from_string(comparator ? comparator : "auto");
    const auto r = sos::empirical_ratio_report(inst->inst, spec, cmp, reps, seed, lp_cap, threads);
    *out = sos_report{};
    copy_text(out->policy, sizeof out->policy, r.policy);
    copy_text(out->comparator, sizeof out->comparator, sos::to_string(r.comparator));
    out->reps = r.stats.reps;
    out->seed = r.seed;
    out->mean = r.stats.mean;
    out->sd = r.stats.sd;
    out->std_error = r.stats.std_error;
    out->ci99 = r.stats.ci99;
    out->comparator_value = r.comparator_value;
    out->ratio = r.ratio;
    out->ratio_ci99 = r.ratio_ci99;
    out->guarantee = r.guarantee;
    out->nominal_guarantee = sos::Policy(spec).nominal_guarantee();
    out->instance_delta = r.instance_delta;
    out->instance_nbue = r.instance_nbue;
    out->degenerate = r.degenerate ? 1 : 0;
    out->pass = r.pass ? 1 : 0;
  });
}

sos_status sos_policy_nominal_guarantee(const sos_policy_spec* policy, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = sos::Policy(to_spec(policy)).nominal_guarantee();
  });
}

sos_status sos_results_csv(const char* instance_id, const sos_report* report, int header, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    sos::RatioReport r;
    r.policy = report->policy;
    r.stats.reps = report->reps;
    r.stats.mean = report->mean;
    r.stats.std_error = report->std_error;
    r.seed = report->seed;
    r.comparator_value = report->comparator_value;
    r.ratio = report->ratio;
    r.guarantee = report->guarantee;
    r.pass = report->pass != 0;
    std::string text = header ? sos::results_csv_header() : std::string();
    text += sos::results_csv_row(instance_id ? instance_id : "", r);
    *out = dup(text);
  });
}

sos_status sos_assignment_trace_csv(const sos_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup(sos::assignment_trace_csv(sos::greedy_assign(inst->inst)));
  });
}

sos_status sos_certify(const sos_instance* inst, long long cap, sos_certificate_report* out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const auto r = sos::certify(inst->inst, cap);
    out->sigma = r.sigma;
    out->horizon = r.horizon;
    out->lp_value = r.lp_value;
    out->surrogate_total = r.surrogate_total;
    out->dual_value = r.dual_value;
    out->min_slack = r.min_slack;
    out->lp_iterations = r.lp_iterations;
    out->dual_feasible = r.dual_feasible;
    out->quarter_bound = r.quarter_bound;
    out->four_bound = r.four_bound;
    out->certified = r.certified();
  });
}

sos_status sos_lp_value(const sos_instance* inst, long long cap, double* out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = sos::solve_lpr(sos::build_lpr(inst->inst, cap)).value;
  });
}

sos_status sos_lp_export_mps(const sos_instance* inst, long long cap, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = dup(sos::export_mps(sos::build_lpr(inst->inst, cap)));
  });
}

sos_status sos_curves_csv(const char* table, double lo, double hi, double step, char** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    const std::string f = table;
    if (f == "unrelated") {
      *out = dup(sos::unrelated_curves_csv(lo, hi, step));
    } else if (f == "single") {
      *out = dup(sos::single_machine_curves_csv(lo, hi, step));
    } else if (f == "misspecified") {
      *out = dup(sos::misspecified_curves_csv(lo, hi, step));
    } else if (f == "nbue") {
      *out = dup(sos::nbue_curves_csv(lo, hi, step));
    } else {
      throw sos::InvalidArgument("unknown curve table '" + f + "'");
    }
  });
}

double sos_g(double delta) {
  try {
    return sos::g_of_delta(delta);
  } catch (const std::exception& e) {
    g_error = e.what();
    return std::nan("");
  }
}

sos_status sos_fdelta_params(double delta, double* D, double* gamma, double* theta, double* c) {
  return guarded([&] {
    const auto f = sos::density_fdelta(delta);
    const bool uni = f.kind() == sos::Density::Kind::uniform;
    if (D) *D = uni ? 0.0 : f.D();
    if (gamma) *gamma = uni ? 0.0 : f.gamma();
    if (theta) *theta = f.theta();
    if (c) *c = uni ? 2.0 : f.guarantee();
  });
}

sos_status sos_alpha_star_delta(double delta, double* alpha, double* c) {
  return guarded([&] {
    const auto a = sos::alpha_star_delta(delta);
    if (alpha) *alpha = a.alpha;
    if (c) *c = a.c;
  });
}

sos_status sos_alpha_star_nbue(double delta, double* alpha, double* c) {
  return guarded([&] {
    const auto a = sos::alpha_star_nbue(delta);
    if (alpha) *alpha = a.alpha;
    if (c) *c = a.c;
  });
}

sos_status sos_misspecified_guarantee(double delta_bar, double delta, const char* policy, double* out) {
  return guarded([&] {
    require(policy, "policy");
    require(out, "out");
    const std::string p = policy;
    sos::MisspecifiedPolicy which;
    if (p == "rsos-fdelta") {
      which = sos::MisspecifiedPolicy::rsos_fdelta;
    } else if (p == "sos-alpha") {
      which = sos::MisspecifiedPolicy::sos_alpha;
    } else {
      throw sos::InvalidArgument("unknown policy '" + p + "' (rsos-fdelta, sos-alpha)");
    }
    *out = sos::misspecified_guarantee(delta_bar, delta, which);
  });
}

double sos_gmux_crossing(void) { return sos::gmux_crossing(); }

}  // extern "C"
