#pragma once

#include <vector>

#include "subcurv/constraint.hpp"
#include "subcurv/oracle.hpp"

namespace subcurv {

/// Exhaustive optimum: the maximal value over feasible sets together with
/// every tied maximizer (within eps_opt).
struct OptResult {
  double value = 0;
  std::vector<Subset> optimal_sets;
  int k = 0;
};

/// Enumerates all subsets of size at most k (the empty set included).
/// Requires n <= 24.
OptResult exact_opt(const ValueOracle& f, int k, double eps_opt = 1e-9);

/// Enumerates all feasible sets of a downward-closed family. Requires n <= 24.
OptResult exact_opt_family(const ValueOracle& f, const ConstraintFamily& family,
                           double eps_opt = 1e-9);

}  // namespace subcurv
