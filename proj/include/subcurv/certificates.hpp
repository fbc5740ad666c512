#pragma once

#include <optional>

#include <nlohmann/json.hpp>

#include "subcurv/exact.hpp"
#include "subcurv/greedy.hpp"
#include "subcurv/oracle.hpp"

namespace subcurv {

struct RemovalCertificate {
  double r_hat = 0;   // max removal-marginal cost ratio over the trajectory
  double c_hat = 0;   // alpha_g / (1 - r_hat)
  int ratios = 0;     // element-step ratios inspected
};

/// OPT-free removal-marginal certificate from a pruned trajectory:
/// r_hat = max over steps i and e in A_i of cost(e) / marginal_g(e | A_i - e).
/// The pruning invariant makes every denominator exceed the cost; a violation
/// is a hard error.
RemovalCertificate certificate_removal(const DecomposableOracle& dec,
                                       const Trajectory& traj, double alpha_g);

/// OPT-aware set-level ratio:
/// r = max over optimal sets and steps with f(A_i \ O*) > 0 of
/// cost(A_i \ O*) / g(A_i \ O*); 0 when no step qualifies.
double certificate_opt_aware(const DecomposableOracle& dec, const Trajectory& traj,
                             const OptResult& opt);

struct SingletonDiagnostic {
  double s_hat = 0;
  bool formal = false;  // certificate rank only when s_hat < 1 - alpha_g
};

/// Cheap singleton ratio max_e cost(e)/g({e}) over elements ever active.
SingletonDiagnostic singleton_diagnostic(const DecomposableOracle& dec,
                                         const Trajectory& traj, double alpha_g);

/// Multiplicative form of the additive cost-benefit baseline bound,
/// 1 - 1/(e(1-rho)); -infinity once rho >= 1. Negative values mean vacuous.
double hfwk_bound(double rho);

struct CertificateReport {
  double alpha_g = 0;  // value used for c_hat (certificate-grade)
  std::optional<double> alpha_analytic;
  double r_hat = 0;
  double c_hat = 0;
  std::optional<double> r_opt_aware;
  double s_hat = 0;
  bool s_formal = false;
  double guarantee_cert = 0;  // clipped guarantee at c_hat
  std::optional<double> hfwk_mult;
  bool rho_heuristic = false;

  nlohmann::json to_json() const;
};

}  // namespace subcurv
