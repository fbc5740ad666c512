#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json.hpp>

#include "subcurv/exact.hpp"
#include "subcurv/greedy.hpp"
#include "subcurv/oracle.hpp"

namespace subcurv {

struct GlobalCurvature {
  double value = 0;                   // 1 - min admissible ratio, 0 if none
  bool admissible = false;            // any positive-denominator pair seen
  std::uint64_t admissible_pairs = 0;
};

/// Set-function curvature over all pairs (X, Y) with f(Y \ X) > 0, enumerated
/// as disjoint pairs (X, Z = Y \ X) in a 3^n sweep over a precomputed value
/// table. Requires n <= 14.
GlobalCurvature curvature_global(const ValueOracle& f,
                                 bool require_positive_singletons = true);

struct GreedyCurvature {
  double value = 0;   // clamped at 0
  double raw = 0;     // unclamped 1 - min ratio
  bool admissible = false;
};

/// Trajectory-restricted curvature over pairs (O*, A_i) for every optimal set
/// and every trajectory index 0..k (terminal set repeated after early stop).
GreedyCurvature curvature_greedy(const ValueOracle& f, const Trajectory& traj,
                                 const OptResult& opt);

/// Classical total curvature of a monotone g:
/// 1 - min_e marginal(e | N - e) / g({e}). Exhaustively verifies monotonicity
/// when n <= 12. Non-positive singletons are an error by default; with
/// skip_nonpositive_singletons the minimum ranges over positive singletons
/// only, which is the classical definition and what certificates need on
/// instances carrying dead elements.
double cc_curvature_total(const ValueOracle& g, bool skip_nonpositive_singletons = false);

/// Approximation-ratio guarantee at curvature c. Monotone instances with
/// c < 1 get the sharper (1-e^-c)/c (continuously extended to 1 at c = 0);
/// otherwise c is clipped up to 1.
double guarantee(double c, bool monotone);

struct CurvatureReport {
  std::optional<double> c_f;
  bool c_f_admissible = false;
  std::uint64_t admissible_pairs = 0;
  double c_g = 0;
  double c_g_raw = 0;
  bool c_g_admissible = false;
  std::optional<double> alpha_cc;
  bool monotone = false;
  double guarantee_nonmonotone = 0;          // clipped formula at c_g
  std::optional<double> guarantee_monotone;  // sharper formula when monotone

  nlohmann::json to_json() const;
};

}  // namespace subcurv
