#include "subcurv/exact.hpp"

#include <stdexcept>

namespace subcurv {

namespace {

template <typename Feasible>
OptResult enumerate_opt(const ValueOracle& f, int k, double eps_opt, Feasible feasible) {
  const int n = f.n();
  if (n > 24) throw std::invalid_argument("exact optimization infeasible: ground set too large");
  if (eps_opt < 0) throw std::invalid_argument("negative tie tolerance");

  const std::uint64_t limit = 1ull << n;
  Subset scratch(n);

  double best = 0.0;  // the empty set is always feasible
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    if (!feasible(mask)) continue;
    scratch.assign_mask(mask);
    double v = f.value(scratch);
    if (v > best) best = v;
  }

  OptResult out;
  out.value = best;
  out.k = k;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (mask != 0 && !feasible(mask)) continue;
    scratch.assign_mask(mask);
    double v = (mask == 0) ? 0.0 : f.value(scratch);
    if (v >= best - eps_opt) out.optimal_sets.push_back(Subset::from_mask(n, mask));
  }
  return out;
}

}  // namespace

OptResult exact_opt(const ValueOracle& f, int k, double eps_opt) {
  if (k < 0 || k > f.n()) throw std::invalid_argument("budget k out of range");
  return enumerate_opt(f, k, eps_opt, [k](std::uint64_t mask) {
    return __builtin_popcountll(mask) <= k;
  });
}

OptResult exact_opt_family(const ValueOracle& f, const ConstraintFamily& family,
                           double eps_opt) {
  family.validate();
  if (family.n != f.n()) throw std::invalid_argument("ground-set mismatch");
  const int n = f.n();
  Subset probe(n);
  return enumerate_opt(f, family.max_set_size(), eps_opt, [&](std::uint64_t mask) {
    probe.assign_mask(mask);
    return family.is_feasible(probe);
  });
}

}  // namespace subcurv
