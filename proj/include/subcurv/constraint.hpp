#pragma once

#include <vector>

#include "subcurv/subset.hpp"

namespace subcurv {

/// Downward-closed feasible family with exact linear optimization.
/// Supported kinds: cardinality (|S| <= k) and partition matroid
/// (per-part capacities). The LP oracle returns an integral member set and
/// never includes non-positive-weight elements: the family is downward
/// closed, so dropping them is always feasible and never worse.
struct ConstraintFamily {
  enum class Kind { cardinality, partition };

  Kind kind = Kind::cardinality;
  int n = 0;
  int k = 0;                     // cardinality bound
  std::vector<int> part_of;      // partition: part id per element
  std::vector<int> capacities;   // partition: per-part capacity

  static ConstraintFamily cardinality(int n, int k);
  static ConstraintFamily partition_matroid(int n, std::vector<int> part_of,
                                            std::vector<int> capacities);

  /// argmax over feasible sets of the weight sum; ties broken toward lower
  /// element index.
  Subset max_weight_set(const std::vector<double>& weights) const;

  bool is_feasible(const Subset& s) const;

  /// Membership of a fractional point in the convex hull of feasible
  /// incidence vectors (box constraints plus the budget inequalities).
  bool in_hull(const std::vector<double>& x, double tol = 1e-9) const;

  int max_set_size() const;

  void validate() const;
};

}  // namespace subcurv
