#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "subcurv/constraint.hpp"
#include "subcurv/exact.hpp"
#include "subcurv/multilinear.hpp"
#include "subcurv/oracle.hpp"

namespace subcurv {

struct FractionalPrune {
  int step = 0;
  int coord = 0;
};

/// Iterate record of a fractional ascent run: T+1 iterates (the start point
/// included), the integral direction chosen at each step, and every
/// coordinate-zeroing event.
struct FractionalTrajectory {
  int T = 0;
  std::vector<std::vector<double>> iterates;   // T+1 points
  std::vector<std::vector<int>> chosen_sets;   // T integral directions
  std::vector<FractionalPrune> prunes;
  double final_value = 0;
  bool sampled = false;

  nlohmann::json to_json() const;
  static FractionalTrajectory from_json(const nlohmann::json& j);
};

/// Discretized measured continuous greedy with pruning: T fixed steps of size
/// 1/T along exact-LP directions over the current slopes, zeroing any
/// positive-mass coordinate whose slope has become non-positive (lowest
/// coordinate first, slopes refreshed after each zeroing).
FractionalTrajectory dmcgp(const MultilinearEvaluator& F, const ConstraintFamily& family,
                           int T);

/// Weighted damped variant for non-negative f: selection weights each slope by
/// the remaining room (1 - x_j) and the update moves each chosen coordinate by
/// a 1/k fraction of its remaining room. Rejects negative-valued objectives.
FractionalTrajectory wdmcgp(const MultilinearEvaluator& F, const ConstraintFamily& family,
                            int k_steps);

/// Sampled-slope variant of dmcgp for ground sets beyond the exact path.
/// Slope estimates are Monte-Carlo; results are diagnostics only.
FractionalTrajectory dmcgp_sampled(const ValueOracle& f, const ConstraintFamily& family,
                                   int T, int samples_per_slope, std::uint64_t seed);

struct FractionalCurvature {
  double value = 0;  // clamped at 0
  double raw = 0;
  bool admissible = false;
};

/// Trajectory-restricted fractional greedy curvature over iterates 0..T-1
/// (the post-final iterate is excluded) against every optimal feasible set.
FractionalCurvature fractional_greedy_curvature(const MultilinearEvaluator& F,
                                                const FractionalTrajectory& traj,
                                                const OptResult& opt);

/// OPT-free removal-slope certificate for decomposable objectives:
/// r_hat_F = max over iterates and active coordinates of cost_j / slope_G_j.
/// The pruning invariant makes every denominator exceed the cost; a violation
/// is a hard error.
double certificate_removal_fractional(const DecomposableOracle& dec,
                                      const FractionalTrajectory& traj);

struct MultilinearDiagnostics {
  double C_F = 0;
  std::optional<double> K_F;
  double error_bound = 0;  // n(n-1) C_F / T
};

MultilinearDiagnostics multilinear_diagnostics(const MultilinearEvaluator& F, int T);

/// Witness that the global extension curvature diverges for negative-valued f:
/// concentrates mass on an inclusion-minimal negative set and bisects the
/// denominator toward zero until the curvature ratio magnitude passes the
/// target.
struct DivergenceWitness {
  Subset negative_set;
  int pivot = -1;       // the coordinate held at 1
  double epsilon = 0;   // mass on the rest of the negative set
  double ratio = 0;     // curvature ratio at the witness (large negative)
  double denominator = 0;
  int bisection_steps = 0;
  std::vector<double> x;
  std::vector<double> y;
};

DivergenceWitness cf_divergence_witness(const ValueOracle& f, double target_magnitude = 1e6);

}  // namespace subcurv
