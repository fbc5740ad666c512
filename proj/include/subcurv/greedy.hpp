#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "subcurv/oracle.hpp"

namespace subcurv {

struct TrajectoryStep {
  int iteration = 0;                // 1-based
  std::optional<int> selected;     // empty on early stop
  Subset pre_prune;                // set after selection, before pruning
  std::vector<int> pruned;         // prune events in removal order
  Subset active;                   // post-prune active set A_i
  double value = 0;                // f(A_i)
};

/// Per-iteration record of a greedy run. Active sets need not be nested:
/// pruning may delete earlier selections. After an early stop the terminal
/// set is repeated for the remaining indices.
struct Trajectory {
  int n = 0;
  int k = 0;
  std::vector<TrajectoryStep> steps;
  bool early_stop = false;
  std::uint64_t oracle_queries = 0;

  /// A_i for i in 0..k; A_0 is empty, indices past an early stop repeat the
  /// terminal set.
  Subset active_set(int i) const;
  const Subset& final_set() const;
  double final_value() const;
  int prune_event_count() const;
  /// Distinct realized active sets A_1..A_k (without repetition padding).
  std::vector<Subset> realized_active_sets() const;

  nlohmann::json to_json() const;
  static Trajectory from_json(const nlohmann::json& j);
};

/// Greedy with pruning: after each addition, repeatedly remove the first
/// element (ground-set order) whose marginal to the rest of the active set is
/// <= tau_prune. Stops early when the best marginal is <= 0.
Trajectory greedy_prune(const ValueOracle& f, int k, double tau_prune = 0.0);

/// Plain greedy with the same stop rule and no pruning.
Trajectory standard_greedy(const ValueOracle& f, int k);

/// Distorted greedy for decomposable objectives: at 0-based step i the score
/// of e is (1-1/k)^(k-i-1) * marginal_g(e|S) - cost(e); the step is skipped
/// (not stopped) when no score is positive.
Subset distorted_greedy(const DecomposableOracle& dec, int k);

/// Random greedy: each step picks uniformly among the k largest marginals,
/// padding with zero-marginal dummies when fewer candidates remain; dummies
/// and non-positive picks add nothing.
Subset random_greedy(const ValueOracle& f, int k, std::uint64_t seed);

/// Greedy that always adds the best-marginal element, positive or not, for k
/// steps. The prefix trajectory backs best-prefix selection and
/// trajectory-curvature proxies on non-monotone objectives.
Trajectory forced_greedy(const ValueOracle& f, int k);

/// Forced-k greedy returning the value-maximizing prefix (including the empty
/// prefix; earliest prefix wins ties).
Subset best_prefix_greedy(const ValueOracle& f, int k);

}  // namespace subcurv
