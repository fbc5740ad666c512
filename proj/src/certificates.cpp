#include "subcurv/certificates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace subcurv {

RemovalCertificate certificate_removal(const DecomposableOracle& dec,
                                       const Trajectory& traj, double alpha_g) {
  if (!dec.valid()) throw std::invalid_argument("removal certificate needs a decomposable oracle");
  const ValueOracle& g = dec.g();

  RemovalCertificate out;
  for (const Subset& active : traj.realized_active_sets()) {
    if (active.empty()) continue;
    const double g_active = g.value(active);
    for (int e : active.elements()) {
      Subset rest = active;
      rest.remove(e);
      const double removal_marginal = g_active - g.value(rest);
      if (removal_marginal <= dec.cost(e))
        throw std::runtime_error(
            "pruning invariant violated: removal marginal does not dominate cost");
      ++out.ratios;
      if (removal_marginal <= 0) continue;  // unreachable given the check above
      out.r_hat = std::max(out.r_hat, dec.cost(e) / removal_marginal);
    }
  }
  out.c_hat = alpha_g / (1.0 - out.r_hat);
  return out;
}

double certificate_opt_aware(const DecomposableOracle& dec, const Trajectory& traj,
                             const OptResult& opt) {
  if (opt.optimal_sets.empty()) throw std::invalid_argument("empty optimal-set list");
  const ValueOracle& f = dec.f();
  const ValueOracle& g = dec.g();

  double r = 0;
  for (const Subset& opt_set : opt.optimal_sets) {
    for (int i = 0; i <= traj.k; ++i) {
      const Subset outside = traj.active_set(i).minus(opt_set);
      if (outside.empty()) continue;
      if (f.value(outside) <= 0) continue;
      r = std::max(r, dec.cost(outside) / g.value(outside));
    }
  }
  return r;
}

SingletonDiagnostic singleton_diagnostic(const DecomposableOracle& dec,
                                         const Trajectory& traj, double alpha_g) {
  const ValueOracle& g = dec.g();
  Subset ever_active(traj.n);
  for (const Subset& active : traj.realized_active_sets())
    ever_active = ever_active.unioned(active);

  SingletonDiagnostic out;
  for (int e : ever_active.elements()) {
    Subset single(traj.n);
    single.add(e);
    const double singleton = g.value(single);
    if (singleton <= 0) throw std::domain_error("singleton diagnostic undefined: zero singleton");
    out.s_hat = std::max(out.s_hat, dec.cost(e) / singleton);
  }
  out.formal = out.s_hat < 1.0 - alpha_g;
  return out;
}

double hfwk_bound(double rho) {
  if (rho >= 1.0) return -std::numeric_limits<double>::infinity();
  return 1.0 - 1.0 / (std::exp(1.0) * (1.0 - rho));
}

nlohmann::json CertificateReport::to_json() const {
  nlohmann::json j;
  j["alpha_g"] = alpha_g;
  if (alpha_analytic)
    j["alpha_analytic"] = *alpha_analytic;
  else
    j["alpha_analytic"] = nullptr;
  j["r_hat"] = r_hat;
  j["c_hat"] = c_hat;
  if (r_opt_aware)
    j["r_opt_aware"] = *r_opt_aware;
  else
    j["r_opt_aware"] = nullptr;
  j["s_hat"] = s_hat;
  j["s_formal"] = s_formal;
  j["guarantee_cert"] = guarantee_cert;
  if (hfwk_mult) {
    if (std::isinf(*hfwk_mult))
      j["hfwk_mult"] = "-inf";
    else
      j["hfwk_mult"] = *hfwk_mult;
  } else {
    j["hfwk_mult"] = nullptr;
  }
  j["rho_heuristic"] = rho_heuristic;
  return j;
}

}  // namespace subcurv
