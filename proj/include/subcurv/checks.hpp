#pragma once

#include <cstdint>
#include <vector>

#include "subcurv/oracle.hpp"

namespace subcurv {

inline constexpr double kStructuralTol = 1e-9;

/// Full value table f[mask] for mask over 2^n subsets. Guarded: the table is
/// the backbone of every exact-enumeration path and 2^n doubles must fit.
std::vector<double> value_table(const ValueOracle& f, int max_n = 20);

struct SubmodularityCheck {
  bool ok = true;
  double worst_violation = 0.0;  // max of Delta(e|S+x) - Delta(e|S) over triples
  std::uint64_t witness_set = 0;
  int witness_add = -1;    // x
  int witness_probe = -1;  // e
};

/// Exhaustive diminishing-returns test: Delta(e|S) >= Delta(e|S+x) for all
/// S, x not in S, e not in S+x, within tol. Requires n <= 16.
SubmodularityCheck check_submodular(const ValueOracle& f, double tol = kStructuralTol);

struct MonotonicityCheck {
  bool ok = true;
  double worst_violation = 0.0;  // max of -Delta(e|S)
  std::uint64_t witness_set = 0;
  int witness_elem = -1;
};

/// Exhaustive monotonicity test: Delta(e|S) >= -tol for all S and e not in S.
/// Requires n <= 16.
MonotonicityCheck check_monotone(const ValueOracle& f, double tol = kStructuralTol);

/// O(n) monotonicity test valid for submodular f: a submodular function is
/// monotone iff every last-element marginal Delta(e | N - e) is non-negative.
bool monotone_given_submodular(const ValueOracle& f, double tol = kStructuralTol);

}  // namespace subcurv
