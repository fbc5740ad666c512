#include "subcurv/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subcurv/rng.hpp"

namespace subcurv {

namespace {

// Zero coordinates with positive mass and non-positive slope, lowest index
// first, refreshing slopes after each removal. Returns prune events.
template <typename GradFn>
void prune_pass(std::vector<double>& x, int step, GradFn&& grad_fn,
                std::vector<FractionalPrune>& events) {
  while (true) {
    const std::vector<double> grad = grad_fn(x);
    int victim = -1;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] > 0 && grad[j] <= 0) {
        victim = static_cast<int>(j);
        break;
      }
    }
    if (victim < 0) return;
    x[victim] = 0;
    events.push_back({step, victim});
  }
}

void check_family(const ConstraintFamily& family, int n) {
  family.validate();
  if (family.n != n) throw std::invalid_argument("ground-set mismatch");
}

}  // namespace

nlohmann::json FractionalTrajectory::to_json() const {
  nlohmann::json j;
  j["T"] = T;
  j["iterates"] = iterates;
  j["chosen_sets"] = chosen_sets;
  nlohmann::json prunes_json = nlohmann::json::array();
  for (const auto& p : prunes) prunes_json.push_back({{"step", p.step}, {"coord", p.coord}});
  j["prunes"] = prunes_json;
  j["final_value"] = final_value;
  j["sampled"] = sampled;
  return j;
}

FractionalTrajectory FractionalTrajectory::from_json(const nlohmann::json& j) {
  FractionalTrajectory t;
  t.T = j.at("T").get<int>();
  t.iterates = j.at("iterates").get<std::vector<std::vector<double>>>();
  t.chosen_sets = j.at("chosen_sets").get<std::vector<std::vector<int>>>();
  for (const auto& p : j.at("prunes"))
    t.prunes.push_back({p.at("step").get<int>(), p.at("coord").get<int>()});
  t.final_value = j.at("final_value").get<double>();
  t.sampled = j.value("sampled", false);
  return t;
}

FractionalTrajectory dmcgp(const MultilinearEvaluator& F, const ConstraintFamily& family,
                           int T) {
  check_family(family, F.n());
  if (T < 1) throw std::invalid_argument("step count must be positive");

  const int n = F.n();
  const double delta = 1.0 / T;
  FractionalTrajectory traj;
  traj.T = T;

  std::vector<double> x(n, 0.0);
  traj.iterates.push_back(x);
  auto grad_fn = [&](const std::vector<double>& p) { return F.gradient(p); };

  for (int i = 0; i < T; ++i) {
    const Subset chosen = family.max_weight_set(F.gradient(x));
    traj.chosen_sets.push_back(chosen.elements());
    for (int j : chosen.elements()) x[j] = std::min(1.0, x[j] + delta);
    prune_pass(x, i, grad_fn, traj.prunes);
    traj.iterates.push_back(x);
  }

  traj.final_value = F.value(x);
  return traj;
}

FractionalTrajectory wdmcgp(const MultilinearEvaluator& F, const ConstraintFamily& family,
                            int k_steps) {
  check_family(family, F.n());
  if (k_steps < 1) throw std::invalid_argument("step count must be positive");
  if (F.min_table_value() < -1e-12)
    throw std::invalid_argument("weighted damped variant requires a non-negative objective");

  const int n = F.n();
  const double delta = 1.0 / k_steps;
  FractionalTrajectory traj;
  traj.T = k_steps;

  std::vector<double> x(n, 0.0);
  traj.iterates.push_back(x);
  auto grad_fn = [&](const std::vector<double>& p) { return F.gradient(p); };

  for (int i = 0; i < k_steps; ++i) {
    prune_pass(x, i, grad_fn, traj.prunes);
    const std::vector<double> grad = F.gradient(x);
    std::vector<double> weighted(n);
    for (int j = 0; j < n; ++j) weighted[j] = (1.0 - x[j]) * grad[j];
    const Subset chosen = family.max_weight_set(weighted);
    traj.chosen_sets.push_back(chosen.elements());
    for (int j : chosen.elements()) x[j] += delta * (1.0 - x[j]);
    traj.iterates.push_back(x);
  }

  traj.final_value = F.value(x);
  return traj;
}

FractionalTrajectory dmcgp_sampled(const ValueOracle& f, const ConstraintFamily& family,
                                   int T, int samples_per_slope, std::uint64_t seed) {
  check_family(family, f.n());
  if (T < 1) throw std::invalid_argument("step count must be positive");
  if (samples_per_slope < 1) throw std::invalid_argument("need at least one sample per slope");

  const int n = f.n();
  const double delta = 1.0 / T;
  Rng rng(seed);

  // d_j F(x) = E[f(R + j) - f(R - j)] with R drawn from x on the other coords.
  auto sampled_gradient = [&](const std::vector<double>& x) {
    std::vector<double> grad(n, 0.0);
    Subset with(n), without(n);
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int s = 0; s < samples_per_slope; ++s) {
        for (int e = 0; e < n; ++e) {
          const bool in = e != j && rng.uniform01() < x[e];
          if (in) {
            with.add(e);
            without.add(e);
          } else {
            with.remove(e);
            without.remove(e);
          }
        }
        with.add(j);
        without.remove(j);
        acc += f.value(with) - f.value(without);
      }
      grad[j] = acc / samples_per_slope;
    }
    return grad;
  };

  FractionalTrajectory traj;
  traj.T = T;
  traj.sampled = true;
  std::vector<double> x(n, 0.0);
  traj.iterates.push_back(x);

  for (int i = 0; i < T; ++i) {
    const Subset chosen = family.max_weight_set(sampled_gradient(x));
    traj.chosen_sets.push_back(chosen.elements());
    for (int j : chosen.elements()) x[j] = std::min(1.0, x[j] + delta);
    prune_pass(x, i, sampled_gradient, traj.prunes);
    traj.iterates.push_back(x);
  }

  traj.final_value = F_sampled(f, x, samples_per_slope * n, rng.next_u64()).estimate;
  return traj;
}

FractionalCurvature fractional_greedy_curvature(const MultilinearEvaluator& F,
                                                const FractionalTrajectory& traj,
                                                const OptResult& opt) {
  if (opt.optimal_sets.empty()) throw std::invalid_argument("empty optimal-set list");
  const int n = F.n();

  FractionalCurvature out;
  double min_ratio = 0;
  std::vector<double> outside(n), joined(n);
  for (const Subset& opt_set : opt.optimal_sets) {
    const double opt_val = F.value_of_mask(opt_set.mask());
    for (int i = 0; i < traj.T && i < static_cast<int>(traj.iterates.size()); ++i) {
      const auto& x = traj.iterates[i];
      for (int j = 0; j < n; ++j) {
        const bool in_opt = opt_set.contains(j);
        outside[j] = in_opt ? 0.0 : x[j];
        joined[j] = in_opt ? 1.0 : x[j];
      }
      const double denom = F.value(outside);
      if (denom <= 0) continue;
      const double ratio = (F.value(joined) - opt_val) / denom;
      if (!out.admissible || ratio < min_ratio) min_ratio = ratio;
      out.admissible = true;
    }
  }
  out.raw = out.admissible ? 1.0 - min_ratio : 0.0;
  out.value = std::max(0.0, out.raw);
  return out;
}

double certificate_removal_fractional(const DecomposableOracle& dec,
                                      const FractionalTrajectory& traj) {
  if (!dec.valid()) throw std::invalid_argument("fractional certificate needs a decomposable oracle");
  MultilinearEvaluator G(dec.g());

  double r_hat = 0;
  for (int i = 0; i < traj.T && i < static_cast<int>(traj.iterates.size()); ++i) {
    const auto& x = traj.iterates[i];
    bool any_active = false;
    for (double v : x) any_active = any_active || v > 0;
    if (!any_active) continue;
    const std::vector<double> grad = G.gradient(x);
    for (int j = 0; j < G.n(); ++j) {
      if (x[j] <= 0) continue;
      if (grad[j] <= dec.cost(j))
        throw std::runtime_error(
            "pruning invariant violated: benefit slope does not dominate cost");
      r_hat = std::max(r_hat, dec.cost(j) / grad[j]);
    }
  }
  return r_hat;
}

MultilinearDiagnostics multilinear_diagnostics(const MultilinearEvaluator& F, int T) {
  MultilinearDiagnostics d;
  d.C_F = smoothness_CF(F);
  d.K_F = remainder_constant_KF(F);
  d.error_bound = double(F.n()) * (F.n() - 1) * d.C_F / T;
  return d;
}

DivergenceWitness cf_divergence_witness(const ValueOracle& f, double target_magnitude) {
  const int n = f.n();
  if (n > 16) throw std::invalid_argument("witness search infeasible: ground set too large");
  MultilinearEvaluator F(f, 16);
  const auto& table = F.table();

  for (int e = 0; e < n; ++e)
    if (table[1ull << e] <= 0)
      throw std::domain_error("witness search requires positive singletons");

  // Inclusion-minimal negative set: the first negative set at the smallest
  // cardinality is automatically minimal.
  std::uint64_t neg_mask = 0;
  for (int card = 1; card <= n && neg_mask == 0; ++card)
    for (std::uint64_t mask = 1; mask < table.size(); ++mask)
      if (__builtin_popcountll(mask) == card && table[mask] < 0) {
        neg_mask = mask;
        break;
      }
  if (neg_mask == 0)
    throw std::invalid_argument("no witness exists: function is non-negative");

  const int pivot = __builtin_ctzll(neg_mask);
  const double neg_value = table[neg_mask];

  auto point_x = [&](double eps) {
    std::vector<double> x(n, 0.0);
    for (int j = 0; j < n; ++j)
      if ((neg_mask >> j) & 1 && j != pivot) x[j] = 1.0 - eps;
    return x;
  };
  auto point_z = [&](double eps) {
    std::vector<double> z(n, 0.0);
    for (int j = 0; j < n; ++j)
      if ((neg_mask >> j) & 1) z[j] = (j == pivot) ? 1.0 : eps;
    return z;
  };
  auto ratio_at = [&](double eps, double& denom_out) {
    const double denom = F.value(point_z(eps));
    denom_out = denom;
    const double numer = neg_value - F.value(point_x(eps));
    return numer / denom;
  };

  // F(z_eps) interpolates from f({pivot}) > 0 at eps=0 to f(neg set) < 0 at
  // eps=1; bisect toward the zero crossing from the positive side.
  double lo = 0.0, hi = 1.0;
  DivergenceWitness w;
  w.negative_set = Subset::from_mask(n, neg_mask);
  w.pivot = pivot;
  w.y.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    if ((neg_mask >> j) & 1) w.y[j] = 1.0;

  for (int step = 0; step < 80; ++step) {
    double denom = 0;
    const double r = ratio_at(lo, denom);
    if (denom > 0 && r <= -target_magnitude) {
      w.epsilon = lo;
      w.ratio = r;
      w.denominator = denom;
      w.bisection_steps = step;
      w.x = point_x(lo);
      return w;
    }
    const double mid = 0.5 * (lo + hi);
    double denom_mid = 0;
    ratio_at(mid, denom_mid);
    if (denom_mid > 0)
      lo = mid;
    else
      hi = mid;
  }
  throw std::runtime_error("bisection failed to reach the target ratio magnitude");
}

}  // namespace subcurv
