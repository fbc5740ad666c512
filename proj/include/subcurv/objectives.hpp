#pragma once

#include <optional>
#include <string>

#include "subcurv/instance.hpp"
#include "subcurv/oracle.hpp"

namespace subcurv {

/// Oracles reconstructed from an instance file. The three cost-penalized
/// families also expose their decomposition.
struct BuiltObjective {
  std::string objective;
  ValueOracle f;
  std::optional<DecomposableOracle> dec;
};

/// Single construction path: generators emit an Instance and every oracle is
/// built from the stored data, so save/load reproduces values exactly.
BuiltObjective build_objective(const Instance& instance);

struct GeneratedInstance {
  Instance instance;
  BuiltObjective built;
};

/// Bayesian A-optimal experimental design: g(S) is the trace reduction of the
/// posterior covariance, costs are row-norm proportional.
GeneratedInstance gen_exp_design(std::uint64_t seed, int n, int d, double kappa,
                                 double cost_scale, double sigma2 = 1.0);

/// Random bipartite coverage: g(S) counts covered items, costs are
/// degree-normalized.
GeneratedInstance gen_coverage(std::uint64_t seed, int n, int m, double p_edge,
                               double cost_scale);

/// Gaussian mutual information with correlated feature groups minus an l1-style
/// per-feature penalty.
GeneratedInstance gen_feature_selection(std::uint64_t seed, int p, int groups,
                                        double rho_within, double sigma2,
                                        double cost_scale);

/// Cardinality-constrained MaxCut. family is "planted" (three-community
/// distractor graph, needs n >= 2k) or "erdos_renyi" (p = 0.3). The graph RNG
/// is seeded with seed*1000 + n*100 + k.
GeneratedInstance gen_maxcut(std::uint64_t seed, int n, int k, const std::string& family);

/// Relevance-minus-redundancy objective over random symmetric similarities
/// (uniform [0,1], symmetrized, unit diagonal), uniform query weights.
GeneratedInstance gen_gclin(std::uint64_t seed, int n, double lambda);

/// Closed-form total curvature of g for the three decomposable families.
double analytic_alpha(const Instance& instance);

/// Restriction of an oracle to elements with positive singleton value.
/// Element order is preserved; kept[i] is the original index of element i.
struct PositiveRestriction {
  ValueOracle oracle;
  std::vector<int> kept;
  std::vector<int> dropped;
};
PositiveRestriction restrict_to_positive_singletons(const ValueOracle& f);

}  // namespace subcurv
