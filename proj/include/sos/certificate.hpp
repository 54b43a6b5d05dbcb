#pragma once

#include <optional>
#include <vector>

#include "sos/greedy_assignment.hpp"
#include "sos/lp_model.hpp"

namespace sos {

/// Dual solution of the time-indexed relaxation, in scaled units.
struct DualCertificate {
  std::vector<double> chi;               // per job (model order)
  std::vector<std::vector<double>> psi;  // [machine][t]

  double value() const;
};

/// chi_j = cost of j's greedy step / 2 and
/// psi_it = sum over jobs k on machine i of w_k * remaining_k(2t) / 2,
/// from a greedy run on the scaled instance. A run on any other instance
/// is a contract violation.
DualCertificate build_dual_certificate(const Assignment& scaled_run, const LprModel& model);

struct CertificateCheck {
  bool feasible = true;
  double dual_value = 0.0;
  double min_slack = 0.0;      // over every dual constraint and psi >= 0
  std::size_t violations = 0;
  std::optional<double> gap;   // primal optimum - dual value, when supplied
};

/// Sweeps every dual constraint chi_j / p_ij <= psi_it + w_j ((t + 1/2) / p_ij + 1/2)
/// for t >= r_j, plus psi >= 0. A constraint counts as violated when its
/// slack is below -tol * max(1, |rhs|).
CertificateCheck verify_dual_certificate(const DualCertificate& cert, const LprModel& model,
                                         std::optional<double> scaled_optimum = {},
                                         double tol = 1e-9);

/// Everything `sos certify` reports. Values are in original time units.
struct CertifyReport {
  double sigma = 1.0;
  long long horizon = 0;
  double lp_value = 0.0;
  double surrogate_total = 0.0;
  double dual_value = 0.0;
  double min_slack = 0.0;
  bool dual_feasible = false;
  bool quarter_bound = false;  // dual value >= surrogate / 4
  bool four_bound = false;     // surrogate <= 4 OPT, 1e-6 relative
  std::size_t lp_iterations = 0;

  bool certified() const { return dual_feasible && quarter_bound && four_bound; }
};

CertifyReport certify(const Instance& inst, long long cap = 400);

}  // namespace sos
