#include "subcurv/curvature.hpp"

#include <cmath>
#include <stdexcept>

#include "subcurv/checks.hpp"

namespace subcurv {

GlobalCurvature curvature_global(const ValueOracle& f, bool require_positive_singletons) {
  const int n = f.n();
  if (n > 14) throw std::invalid_argument("global curvature infeasible: ground set too large");
  const auto table = value_table(f, 14);

  if (require_positive_singletons)
    for (int e = 0; e < n; ++e)
      if (table[1ull << e] <= 0)
        throw std::domain_error("non-positive singleton; restrict the oracle first");

  GlobalCurvature out;
  double min_ratio = 0;
  const std::uint64_t limit = 1ull << n;
  for (std::uint64_t z = 1; z < limit; ++z) {
    const double denom = table[z];
    if (denom <= 0) continue;
    const std::uint64_t comp = (limit - 1) & ~z;
    // every X disjoint from Z, descending subset enumeration of comp
    std::uint64_t x = comp;
    while (true) {
      const double ratio = (table[x | z] - table[x]) / denom;
      if (!out.admissible || ratio < min_ratio) min_ratio = ratio;
      out.admissible = true;
      ++out.admissible_pairs;
      if (x == 0) break;
      x = (x - 1) & comp;
    }
  }
  out.value = out.admissible ? 1.0 - min_ratio : 0.0;
  return out;
}

GreedyCurvature curvature_greedy(const ValueOracle& f, const Trajectory& traj,
                                 const OptResult& opt) {
  if (opt.optimal_sets.empty()) throw std::invalid_argument("empty optimal-set list");
  if (traj.n != f.n()) throw std::invalid_argument("ground-set mismatch");

  GreedyCurvature out;
  double min_ratio = 0;
  for (const Subset& opt_set : opt.optimal_sets) {
    const double opt_val = f.value(opt_set);
    for (int i = 0; i <= traj.k; ++i) {
      const Subset active = traj.active_set(i);
      const Subset outside = active.minus(opt_set);
      if (outside.empty()) continue;
      const double denom = f.value(outside);
      if (denom <= 0) continue;
      const double ratio = (f.value(opt_set.unioned(active)) - opt_val) / denom;
      if (!out.admissible || ratio < min_ratio) min_ratio = ratio;
      out.admissible = true;
    }
  }
  out.raw = out.admissible ? 1.0 - min_ratio : 0.0;
  out.value = std::max(0.0, out.raw);
  return out;
}

double cc_curvature_total(const ValueOracle& g, bool skip_nonpositive_singletons) {
  const int n = g.n();
  if (n <= 12) {
    auto mono = check_monotone(g);
    if (!mono.ok) throw std::invalid_argument("total curvature requires a monotone function");
  }
  Subset all(n);
  for (int e = 0; e < n; ++e) all.add(e);
  const double full = g.value(all);

  double min_ratio = 1.0;
  bool first = true;
  for (int e = 0; e < n; ++e) {
    Subset single(n);
    single.add(e);
    const double singleton = g.value(single);
    if (singleton <= 0) {
      if (skip_nonpositive_singletons) continue;
      throw std::domain_error("total curvature undefined: zero singleton");
    }
    Subset rest = all;
    rest.remove(e);
    const double ratio = (full - g.value(rest)) / singleton;
    if (first || ratio < min_ratio) min_ratio = ratio;
    first = false;
  }
  if (first) throw std::domain_error("total curvature undefined: no positive singleton");
  return 1.0 - min_ratio;
}

double guarantee(double c, bool monotone) {
  if (c < 0) throw std::invalid_argument("curvature must be non-negative");
  if (monotone && c < 1.0) {
    if (c == 0.0) return 1.0;
    return -std::expm1(-c) / c;
  }
  const double cb = std::max(1.0, c);
  return -std::expm1(-cb) / cb;
}

nlohmann::json CurvatureReport::to_json() const {
  nlohmann::json j;
  if (c_f)
    j["c_f"] = *c_f;
  else
    j["c_f"] = nullptr;
  j["c_f_admissible"] = c_f_admissible;
  j["admissible_pairs"] = admissible_pairs;
  j["c_g"] = c_g;
  j["c_g_raw"] = c_g_raw;
  j["c_g_admissible"] = c_g_admissible;
  if (alpha_cc)
    j["alpha_cc"] = *alpha_cc;
  else
    j["alpha_cc"] = nullptr;
  j["monotone"] = monotone;
  j["guarantee_nonmonotone"] = guarantee_nonmonotone;
  if (guarantee_monotone)
    j["guarantee_monotone"] = *guarantee_monotone;
  else
    j["guarantee_monotone"] = nullptr;
  return j;
}

}  // namespace subcurv
