#include "subcurv/constraint.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace subcurv {

ConstraintFamily ConstraintFamily::cardinality(int n, int k) {
  ConstraintFamily fam;
  fam.kind = Kind::cardinality;
  fam.n = n;
  fam.k = k;
  fam.validate();
  return fam;
}

ConstraintFamily ConstraintFamily::partition_matroid(int n, std::vector<int> part_of,
                                                     std::vector<int> capacities) {
  ConstraintFamily fam;
  fam.kind = Kind::partition;
  fam.n = n;
  fam.part_of = std::move(part_of);
  fam.capacities = std::move(capacities);
  fam.validate();
  return fam;
}

void ConstraintFamily::validate() const {
  if (n < 1) throw std::invalid_argument("constraint family over empty ground set");
  if (kind == Kind::cardinality) {
    if (k < 1 || k > n) throw std::invalid_argument("cardinality bound out of range");
    return;
  }
  if (static_cast<int>(part_of.size()) != n)
    throw std::invalid_argument("partition assignment must cover the ground set");
  for (int p : part_of)
    if (p < 0 || p >= static_cast<int>(capacities.size()))
      throw std::invalid_argument("element assigned to unknown part");
  for (int c : capacities)
    if (c < 0) throw std::invalid_argument("negative part capacity");
}

Subset ConstraintFamily::max_weight_set(const std::vector<double>& weights) const {
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("weight vector size mismatch");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weights[a] > weights[b]; });
  Subset chosen(n);
  if (kind == Kind::cardinality) {
    int taken = 0;
    for (int e : order) {
      if (taken >= k) break;
      if (weights[e] <= 0) break;
      chosen.add(e);
      ++taken;
    }
    return chosen;
  }
  std::vector<int> used(capacities.size(), 0);
  for (int e : order) {
    if (weights[e] <= 0) break;
    int p = part_of[e];
    if (used[p] < capacities[p]) {
      chosen.add(e);
      ++used[p];
    }
  }
  return chosen;
}

bool ConstraintFamily::is_feasible(const Subset& s) const {
  if (s.n() != n) throw std::invalid_argument("ground-set mismatch");
  if (kind == Kind::cardinality) return s.count() <= k;
  std::vector<int> used(capacities.size(), 0);
  for (int e : s.elements())
    if (++used[part_of[e]] > capacities[part_of[e]]) return false;
  return true;
}

bool ConstraintFamily::in_hull(const std::vector<double>& x, double tol) const {
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("point dimension mismatch");
  for (double v : x)
    if (v < -tol || v > 1 + tol) return false;
  if (kind == Kind::cardinality) {
    double total = 0;
    for (double v : x) total += v;
    return total <= k + tol;
  }
  std::vector<double> mass(capacities.size(), 0);
  for (int e = 0; e < n; ++e) mass[part_of[e]] += x[e];
  for (std::size_t p = 0; p < capacities.size(); ++p)
    if (mass[p] > capacities[p] + tol) return false;
  return true;
}

int ConstraintFamily::max_set_size() const {
  if (kind == Kind::cardinality) return k;
  int total = 0;
  for (int c : capacities) total += c;
  return std::min(total, n);
}

}  // namespace subcurv
