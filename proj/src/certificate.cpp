#include "sos/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sos/error.hpp"

namespace sos {

double DualCertificate::value() const {
  double v = 0.0;
  for (double c : chi) v += c;
  for (const auto& row : psi) {
    for (double p : row) v -= p;
  }
  return v;
}

DualCertificate build_dual_certificate(const Assignment& run, const LprModel& model) {
  const std::size_t n = model.jobs();
  if (run.machines.size() != model.machines || run.machine_of.size() != n || run.trace.size() != n) {
    throw ContractViolation("greedy run does not match the model dimensions");
  }
  DualCertificate cert;
  cert.chi.assign(n, 0.0);
  for (const auto& step : run.trace) {
    const std::size_t j = step.job_index;
    const std::size_t i = step.chosen;
    const auto& vj = run.machines[i].schedule().job(step.job_id);
    if (step.job_id != model.ids[j] || vj.mean != static_cast<double>(model.mean[i][j]) ||
        vj.release != static_cast<double>(model.release[j])) {
      throw ContractViolation("greedy run was not made on the scaled instance");
    }
    cert.chi[j] = 0.5 * step.cost[i];
  }
  const auto T = static_cast<std::size_t>(model.horizon);
  cert.psi.assign(model.machines, std::vector<double>(T, 0.0));
  for (std::size_t i = 0; i < model.machines; ++i) {
    const auto& vs = run.machines[i].schedule();
    for (std::size_t t = 0; t < T; ++t) {
      double acc = 0.0;
      for (const auto& k : vs.jobs()) acc += k.weight * vs.remaining_fraction(k.id, 2.0 * static_cast<double>(t));
      cert.psi[i][t] = 0.5 * acc;
    }
  }
  return cert;
}

CertificateCheck verify_dual_certificate(const DualCertificate& cert, const LprModel& model,
                                         std::optional<double> scaled_optimum, double tol) {
  const auto T = static_cast<std::size_t>(model.horizon);
  if (cert.chi.size() != model.jobs() || cert.psi.size() != model.machines) {
    throw InvalidArgument("certificate dimensions do not match the model");
  }
  for (const auto& row : cert.psi) {
    if (row.size() != T) throw InvalidArgument("certificate dimensions do not match the model");
  }
  CertificateCheck out;
  out.min_slack = std::numeric_limits<double>::infinity();
  auto record = [&](double slack, double scale) {
    out.min_slack = std::min(out.min_slack, slack);
    if (slack < -tol * std::max(1.0, std::abs(scale))) {
      ++out.violations;
      out.feasible = false;
    }
  };
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (std::size_t t = 0; t < T; ++t) record(cert.psi[i][t], 0.0);
  }
  for (std::size_t i = 0; i < model.machines; ++i) {
    for (std::size_t j = 0; j < model.jobs(); ++j) {
      const double p = static_cast<double>(model.mean[i][j]);
      for (auto t = static_cast<std::size_t>(model.release[j]); t < T; ++t) {
        const double rhs =
            cert.psi[i][t] + model.weight[j] * ((static_cast<double>(t) + 0.5) / p + 0.5);
        record(rhs - cert.chi[j] / p, rhs);
      }
    }
  }
  if (out.min_slack == std::numeric_limits<double>::infinity()) out.min_slack = 0.0;
  out.dual_value = cert.value();
  if (scaled_optimum) out.gap = *scaled_optimum - out.dual_value;
  return out;
}

CertifyReport certify(const Instance& inst, long long cap) {
  const auto model = build_lpr(inst, cap);
  const auto run = greedy_assign(scaled_instance(model));
  const auto cert = build_dual_certificate(run, model);
  const auto lp = solve_lpr(model);
  const auto check = verify_dual_certificate(cert, model, lp.scaled_value);

  CertifyReport rep;
  rep.sigma = model.sigma;
  rep.horizon = model.horizon;
  rep.lp_iterations = lp.iterations;
  rep.lp_value = lp.value;
  rep.surrogate_total = run.surrogate_total() / model.sigma;
  rep.dual_value = check.dual_value / model.sigma;
  rep.min_slack = check.min_slack;
  rep.dual_feasible = check.feasible;
  const double s = run.surrogate_total();
  rep.quarter_bound = check.dual_value >= 0.25 * s - 1e-9 * std::max(1.0, s);
  rep.four_bound = s <= 4.0 * lp.scaled_value * (1.0 + 1e-6) + 1e-12;
  return rep;
}

}  // namespace sos
