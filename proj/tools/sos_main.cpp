// sos: generate instances, run policies, print guarantee curves, certify.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sos/sos.h"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailure = 2;

struct InstanceDeleter {
  void operator()(sos_instance* p) const { sos_instance_free(p); }
};
using InstancePtr = std::unique_ptr<sos_instance, InstanceDeleter>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { sos_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int exit_code(sos_status st) {
  switch (st) {
    case SOS_OK:
      return kOk;
    case SOS_NUMERICAL_ERROR:
    case SOS_INTERNAL_ERROR:
      return kFailure;
    default:
      return kUsage;
  }
}

int fail(sos_status st) {
  std::cerr << "sos: " << sos_last_error() << '\n';
  return exit_code(st);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Writes to the file atomically, or to stdout when no path is given.
int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kOk;
  }
  if (const auto st = sos_write_text_file(path.c_str(), text.c_str()); st != SOS_OK) return fail(st);
  return kOk;
}

int load(const std::string& path, InstancePtr& out) {
  sos_instance* raw = nullptr;
  if (const auto st = sos_instance_read_file(path.c_str(), &raw); st != SOS_OK) return fail(st);
  out.reset(raw);
  return kOk;
}

struct GenerateArgs {
  sos_generator_spec spec{};
  std::string family = "exponential";
  std::optional<double> delta_target;
  bool even_integer = false;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(GenerateArgs& a) {
  a.spec.family = a.family.c_str();
  a.spec.has_delta_target = a.delta_target ? 1 : 0;
  a.spec.delta_target = a.delta_target.value_or(0.0);
  a.spec.even_integer = a.even_integer ? 1 : 0;
  sos_instance* raw = nullptr;
  if (const auto st = sos_instance_generate(&a.spec, a.seed, &raw); st != SOS_OK) return fail(st);
  InstancePtr inst(raw);
  OwnedString json;
  if (const auto st = sos_instance_to_json(inst.get(), &json.s); st != SOS_OK) return fail(st);
  return emit(a.out, json.str() + "\n");
}

struct RunArgs {
  std::string instance;
  std::string policy;
  std::optional<double> alpha, delta, nbue_delta;
  std::optional<std::string> density;
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  std::string comparator = "auto";
  long long lp_cap = 400;
  unsigned threads = 0;
  std::string out;
  std::string trace;
  std::string id;
};

int cmd_run(const RunArgs& a) {
  InstancePtr inst;
  if (const int rc = load(a.instance, inst); rc != kOk) return rc;

  sos_policy_spec p{};
  p.name = a.policy.c_str();
  p.has_alpha = a.alpha.has_value();
  p.alpha = a.alpha.value_or(0.0);
  p.has_delta = a.delta.has_value();
  p.delta = a.delta.value_or(0.0);
  p.has_nbue_delta = a.nbue_delta.has_value();
  p.nbue_delta = a.nbue_delta.value_or(0.0);
  p.density = a.density ? a.density->c_str() : nullptr;

  sos_report r{};
  if (const auto st = sos_evaluate(inst.get(), &p, a.comparator.c_str(), a.reps, a.seed, a.lp_cap, a.threads, &r);
      st != SOS_OK) {
    return fail(st);
  }

  std::string id = a.id;
  if (id.empty()) {
    id = a.instance;
    if (const auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  }
  OwnedString row;
  if (const auto st = sos_results_csv(id.c_str(), &r, 1, &row.s); st != SOS_OK) return fail(st);

  std::ostringstream head;
  head << "# policy=" << r.policy << " c=" << fmt(r.nominal_guarantee) << " comparator=" << r.comparator
       << " delta=" << fmt(r.instance_delta) << " nbue_delta=" << fmt(r.instance_nbue)
       << " ratio_ci99=" << fmt(r.ratio_ci99) << '\n';
  if (const int rc = emit(a.out, head.str() + row.str()); rc != kOk) return rc;

  if (!a.trace.empty()) {
    OwnedString trace;
    if (const auto st = sos_assignment_trace_csv(inst.get(), &trace.s); st != SOS_OK) return fail(st);
    if (const int rc = emit(a.trace, trace.str()); rc != kOk) return rc;
  }
  if (!r.pass) {
    std::cerr << "sos: ratio " << fmt(r.ratio) << " exceeds guarantee " << fmt(r.guarantee) << '\n';
    return kFailure;
  }
  return kOk;
}

struct CurvesArgs {
  double lo = 0.0, hi = 2.0, step = 0.001;
  double misspec_step = 0.1;
  std::string out = ".";
};

int cmd_curves(const CurvesArgs& a) {
  struct Table {
    const char* name;
    const char* file;
    double step;
  };
  const Table tables[] = {
      {"unrelated", "unrelated.csv", a.step},
      {"single", "single_machine.csv", a.step},
      {"misspecified", "misspecified.csv", a.misspec_step},
      {"nbue", "nbue.csv", a.step},
  };
  for (const auto& f : tables) {
    OwnedString csv;
    if (const auto st = sos_curves_csv(f.name, a.lo, a.hi, f.step, &csv.s); st != SOS_OK) return fail(st);
    if (const int rc = emit(a.out + "/" + f.file, csv.str()); rc != kOk) return rc;
  }
  return kOk;
}

struct CertifyArgs {
  std::string instance;
  long long lp_cap = 400;
  std::string out;
  std::string mps;
};

int cmd_certify(const CertifyArgs& a) {
  InstancePtr inst;
  if (const int rc = load(a.instance, inst); rc != kOk) return rc;
  sos_certificate_report c{};
  if (const auto st = sos_certify(inst.get(), a.lp_cap, &c); st != SOS_OK) {
    if (st == SOS_CAP_EXCEEDED) {
      std::cerr << "sos: horizon needs --lp-cap " << sos_last_required_cap() << " (got " << a.lp_cap << ")\n";
      return kUsage;
    }
    return fail(st);
  }
  if (!a.mps.empty()) {
    OwnedString mps;
    if (const auto st = sos_lp_export_mps(inst.get(), a.lp_cap, &mps.s); st != SOS_OK) return fail(st);
    if (const int rc = emit(a.mps, mps.str()); rc != kOk) return rc;
  }
  std::ostringstream os;
  os << "sigma=" << fmt(c.sigma) << '\n'
     << "horizon=" << c.horizon << '\n'
     << "lp_value=" << fmt(c.lp_value) << '\n'
     << "lp_iterations=" << c.lp_iterations << '\n'
     << "surrogate_total=" << fmt(c.surrogate_total) << '\n'
     << "dual_value=" << fmt(c.dual_value) << '\n'
     << "min_slack=" << fmt(c.min_slack) << '\n'
     << "dual_feasible=" << (c.dual_feasible ? "true" : "false") << '\n'
     << "dual_ge_quarter_surrogate=" << (c.quarter_bound ? "true" : "false") << '\n'
     << "surrogate_le_4_lp=" << (c.four_bound ? "true" : "false") << '\n'
     << "certified=" << (c.certified ? "true" : "false") << '\n';
  if (const int rc = emit(a.out, os.str()); rc != kOk) return rc;
  return c.certified ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic online scheduling: alpha-point policies, bounds and guarantees"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sos_version()));

  GenerateArgs gen;
  sos_generator_spec_init(&gen.spec);
  auto* g = app.add_subcommand("generate", "Write a random instance as JSON");
  g->add_option("--jobs", gen.spec.jobs, "Number of jobs")->capture_default_str();
  g->add_option("--machines", gen.spec.machines, "Number of machines")->capture_default_str();
  g->add_option("--family", gen.family,
                "deterministic, exponential, uniform, two_point, scaled_bernoulli or mixed")
      ->capture_default_str();
  g->add_option("--delta-target", gen.delta_target, "Squared-CV target for every entry");
  g->add_option("--weight-lo", gen.spec.weight_lo)->capture_default_str();
  g->add_option("--weight-hi", gen.spec.weight_hi)->capture_default_str();
  g->add_option("--release-lo", gen.spec.release_lo)->capture_default_str();
  g->add_option("--release-hi", gen.spec.release_hi)->capture_default_str();
  g->add_option("--mean-lo", gen.spec.mean_lo)->capture_default_str();
  g->add_option("--mean-hi", gen.spec.mean_hi)->capture_default_str();
  g->add_flag("--even-integer", gen.even_integer, "Even-integer means and releases, integer weights");
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out, "Output file (stdout if omitted)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Monte Carlo evaluation of a policy on an instance");
  r->add_option("--instance", run.instance, "Instance JSON")->required();
  r->add_option("--policy", run.policy, "rsos, dsos, sos, ga-rsos, ga-dsos or ga-sos")->required();
  r->add_option("--alpha", run.alpha, "Fixed alpha for sos");
  r->add_option("--delta", run.delta, "Squared-CV bound used to tune the policy");
  r->add_option("--nbue-delta", run.nbue_delta, "NBUE bound used to tune sos");
  r->add_option("--density", run.density, "uniform or fdelta (rsos only)");
  r->add_option("--reps", run.reps)->capture_default_str()->check(CLI::PositiveNumber);
  r->add_option("--seed", run.seed)->capture_default_str();
  r->add_option("--comparator", run.comparator, "auto, surrogate, mean-busy or lp")->capture_default_str();
  r->add_option("--lp-cap", run.lp_cap, "Largest LP horizon in slots")->capture_default_str();
  r->add_option("--threads", run.threads, "Worker threads (0: SOS_THREADS or all cores)");
  r->add_option("--id", run.id, "instance_id column (default: file name)");
  r->add_option("--out", run.out, "Results CSV (stdout if omitted)");
  r->add_option("--trace", run.trace, "Assignment trace CSV");

  CurvesArgs curves;
  auto* c = app.add_subcommand("curves", "Write guarantee curves as CSV");
  c->add_option("--lo", curves.lo)->capture_default_str();
  c->add_option("--hi", curves.hi)->capture_default_str();
  c->add_option("--step", curves.step)->capture_default_str();
  c->add_option("--misspec-step", curves.misspec_step, "Grid step of the mis-specification table")->capture_default_str();
  c->add_option("--out", curves.out, "Output directory")->capture_default_str()->check(CLI::ExistingDirectory);

  CertifyArgs cert;
  auto* k = app.add_subcommand("certify", "Check the dual-fitting certificate of the greedy assignment");
  k->add_option("--instance", cert.instance, "Instance JSON")->required();
  k->add_option("--lp-cap", cert.lp_cap, "Largest LP horizon in slots")->capture_default_str();
  k->add_option("--out", cert.out, "Report file (stdout if omitted)");
  k->add_option("--mps", cert.mps, "Also export the LP in free MPS format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (g->parsed()) return cmd_generate(gen);
  if (r->parsed()) return cmd_run(run);
  if (c->parsed()) return cmd_curves(curves);
  return cmd_certify(cert);
}
