#include "subcurv/checks.hpp"

#include <stdexcept>

namespace subcurv {

std::vector<double> value_table(const ValueOracle& f, int max_n) {
  const int n = f.n();
  if (n > max_n) throw std::invalid_argument("exact check infeasible: ground set too large");
  std::vector<double> table(std::size_t(1) << n);
  Subset scratch(n);
  for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
    scratch.assign_mask(mask);
    table[mask] = f.value(scratch);
  }
  return table;
}

SubmodularityCheck check_submodular(const ValueOracle& f, double tol) {
  const int n = f.n();
  if (n > 16) throw std::invalid_argument("exact check infeasible: ground set too large");
  const auto table = value_table(f, 16);

  SubmodularityCheck result;
  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (std::uint64_t s = 0; s <= full; ++s) {
    for (int x = 0; x < n; ++x) {
      if ((s >> x) & 1) continue;
      const std::uint64_t sx = s | (1ull << x);
      for (int e = 0; e < n; ++e) {
        if ((sx >> e) & 1) continue;
        const double gain_small = table[s | (1ull << e)] - table[s];
        const double gain_large = table[sx | (1ull << e)] - table[sx];
        const double violation = gain_large - gain_small;
        if (violation > result.worst_violation) {
          result.worst_violation = violation;
          result.witness_set = s;
          result.witness_add = x;
          result.witness_probe = e;
        }
      }
    }
  }
  result.ok = result.worst_violation <= tol;
  return result;
}

MonotonicityCheck check_monotone(const ValueOracle& f, double tol) {
  const int n = f.n();
  if (n > 16) throw std::invalid_argument("exact check infeasible: ground set too large");
  const auto table = value_table(f, 16);

  MonotonicityCheck result;
  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  for (std::uint64_t s = 0; s <= full; ++s) {
    for (int e = 0; e < n; ++e) {
      if ((s >> e) & 1) continue;
      const double drop = table[s] - table[s | (1ull << e)];
      if (drop > result.worst_violation) {
        result.worst_violation = drop;
        result.witness_set = s;
        result.witness_elem = e;
      }
    }
  }
  result.ok = result.worst_violation <= tol;
  return result;
}

bool monotone_given_submodular(const ValueOracle& f, double tol) {
  const int n = f.n();
  Subset all(n);
  for (int e = 0; e < n; ++e) all.add(e);
  for (int e = 0; e < n; ++e) {
    Subset rest = all;
    rest.remove(e);
    if (f.value(all) - f.value(rest) < -tol) return false;
  }
  return true;
}

}  // namespace subcurv
