#include <doctest.h>

#include <cmath>

#include "subcurv/certificates.hpp"
#include "subcurv/checks.hpp"
#include "subcurv/continuous.hpp"
#include "subcurv/curvature.hpp"
#include "subcurv/exact.hpp"
#include "subcurv/greedy.hpp"
#include "subcurv/multilinear.hpp"
#include "subcurv/objectives.hpp"
#include "subcurv/rng.hpp"

using namespace subcurv;

namespace {

ValueOracle modular_oracle(std::vector<double> weights) {
  const int n = static_cast<int>(weights.size());
  return ValueOracle(n, [w = std::move(weights)](const Subset& s) {
    double total = 0;
    for (int e : s.elements()) total += w[e];
    return total;
  });
}

ValueOracle k2_cut() {
  return ValueOracle(2, [](const Subset& s) {
    return s.contains(0) != s.contains(1) ? 1.0 : 0.0;
  });
}

std::vector<double> random_point(Rng& rng, int n, double lo = 0.0, double hi = 1.0) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

}  // namespace

TEST_CASE("exact extension at vertices and simple points") {
  auto gen = gen_coverage(3, 8, 16, 0.3, 1.0);
  MultilinearEvaluator F(gen.built.f);
  Rng rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    Subset s(8);
    for (int e = 0; e < 8; ++e)
      if (rng.uniform01() < 0.5) s.add(e);
    std::vector<double> x(8, 0.0);
    for (int e : s.elements()) x[e] = 1.0;
    CHECK(F.value(x) == doctest::Approx(gen.built.f.value(s)).epsilon(1e-12));
  }
  CHECK(F.value(std::vector<double>(8, 0.0)) == doctest::Approx(0.0));

  MultilinearEvaluator K2(k2_cut());
  CHECK(K2.value({0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(F.value({0.5}), std::invalid_argument);
  CHECK_THROWS_AS(F.value(std::vector<double>(8, 1.5)), std::invalid_argument);
}

TEST_CASE("exact extension refuses large ground sets") {
  ValueOracle big(21, [](const Subset& s) { return double(s.count()); });
  CHECK_THROWS_AS(MultilinearEvaluator{big}, std::invalid_argument);
}

TEST_CASE("sampled extension") {
  auto f = k2_cut();
  auto integral = F_sampled(f, {1.0, 0.0}, 50, 7);
  CHECK(integral.estimate == doctest::Approx(1.0));
  CHECK(integral.std_error == doctest::Approx(0.0));

  auto mid = F_sampled(f, {0.5, 0.5}, 100000, 11);
  CHECK(std::abs(mid.estimate - 0.5) <= 3.0 * mid.std_error);

  auto one = F_sampled(f, {0.5, 0.5}, 1, 3);
  CHECK((one.estimate == 0.0 || one.estimate == 1.0));
  CHECK_THROWS_AS(F_sampled(f, {0.5, 0.5}, 0, 1), std::invalid_argument);
}

TEST_CASE("slopes") {
  auto mod = modular_oracle({3, 2, 1});
  MultilinearEvaluator F(mod);
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    auto x = random_point(rng, 3);
    CHECK(F.slope(x, 0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(F.slope(x, 2) == doctest::Approx(1.0).epsilon(1e-12));
  }

  MultilinearEvaluator K2(k2_cut());
  CHECK(K2.slope({0.0, 0.0}, 0) == doctest::Approx(1.0));
  CHECK(slope(k2_cut(), {0.0, 0.0}, 0) == doctest::Approx(1.0));

  // the extension is affine in each coordinate: any central difference is exact
  auto gen = gen_coverage(9, 8, 14, 0.3, 1.0);
  MultilinearEvaluator G(gen.built.f);
  for (int rep = 0; rep < 20; ++rep) {
    auto x = random_point(rng, 8, 0.2, 0.8);
    const int j = rep % 8;
    auto hi = x, lo = x;
    hi[j] += 0.1;
    lo[j] -= 0.1;
    const double fd = (G.value(hi) - G.value(lo)) / 0.2;
    CHECK(G.slope(x, j) == doctest::Approx(fd).epsilon(1e-9));
  }
}

TEST_CASE("gradient matches per-coordinate slopes") {
  auto gen = gen_gclin(2, 9, 0.8);
  MultilinearEvaluator F(gen.built.f);
  Rng rng(3);
  auto x = random_point(rng, 9);
  auto grad = F.gradient(x);
  for (int j = 0; j < 9; ++j) CHECK(grad[j] == doctest::Approx(F.slope(x, j)).epsilon(1e-12));
}

TEST_CASE("smoothness constant") {
  CHECK(smoothness_CF(modular_oracle({3, 2, 1})) == doctest::Approx(0.0));
  CHECK(smoothness_CF(k2_cut()) == doctest::Approx(2.0));

  // second route: mixed partials evaluated at explicit corner points
  auto gen = gen_coverage(4, 8, 16, 0.3, 1.0);
  MultilinearEvaluator F(gen.built.f);
  double corner_max = 0;
  for (int j = 0; j < 8; ++j)
    for (int l = j + 1; l < 8; ++l)
      for (std::uint64_t corner = 0; corner < 256; ++corner) {
        std::vector<double> x(8, 0.0);
        for (int b = 0; b < 8; ++b)
          if ((corner >> b) & 1) x[b] = 1.0;
        corner_max = std::max(corner_max, std::abs(F.mixed_partial(x, j, l)));
      }
  CHECK(smoothness_CF(gen.built.f) == doctest::Approx(corner_max).epsilon(1e-12));
}

TEST_CASE("higher-order remainder constant") {
  // cut functions are quadratic: only pairwise terms contribute, each at most 2
  auto gen = gen_maxcut(1, 5, 2, "erdos_renyi");
  MultilinearEvaluator F(gen.built.f);
  const bool has_edge = !gen.instance.params.at("edges").empty();
  auto kf = remainder_constant_KF(F);
  REQUIRE(kf.has_value());
  if (has_edge) CHECK(*kf == doctest::Approx(10.0 * 2.0).epsilon(1e-12));

  auto mod = MultilinearEvaluator(modular_oracle({1, 2, 3}));
  CHECK(*remainder_constant_KF(mod) == doctest::Approx(0.0));

  ValueOracle big(13, [](const Subset& s) { return double(s.count()); });
  CHECK_FALSE(remainder_constant_KF(MultilinearEvaluator(big)).has_value());
}

TEST_CASE("fixed-step ascent on a modular objective") {
  auto mod = modular_oracle({5, 4, 3, 2, 1});
  MultilinearEvaluator F(mod);
  auto fam = ConstraintFamily::cardinality(5, 2);
  auto traj = dmcgp(F, fam, 100);
  CHECK(traj.final_value == doctest::Approx(9.0).epsilon(1e-9));
  const auto& last = traj.iterates.back();
  CHECK(last[0] == doctest::Approx(1.0));
  CHECK(last[1] == doctest::Approx(1.0));
  CHECK(last[2] + last[3] + last[4] == doctest::Approx(0.0));
}

TEST_CASE("ascent invariants on cut instances") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto gen = gen_maxcut(seed, 10, 5, "planted");
    MultilinearEvaluator F(gen.built.f);
    auto fam = ConstraintFamily::cardinality(10, 5);
    const int T = 60;
    auto traj = dmcgp(F, fam, T);
    REQUIRE(int(traj.iterates.size()) == T + 1);

    for (int i = 0; i <= T; ++i) {
      const auto& x = traj.iterates[i];
      CHECK(fam.in_hull(x, 1e-9));
      auto grad = F.gradient(x);
      for (int j = 0; j < 10; ++j) {
        CHECK(x[j] <= double(i) / T + 1e-12);  // per-coordinate growth cap
        if (x[j] > 0) CHECK(grad[j] > 0);      // post-prune slope invariant
      }
    }

    // value never drops across a prune pass
    for (const auto& prune : traj.prunes) {
      std::vector<double> pre = traj.iterates[prune.step];
      for (int j : traj.chosen_sets[prune.step])
        pre[j] = std::min(1.0, pre[j] + 1.0 / T);
      CHECK(F.value(traj.iterates[prune.step + 1]) >= F.value(pre) - 1e-12);
    }
  }
}

TEST_CASE("damped weighted ascent") {
  auto gen = gen_maxcut(2, 9, 4, "erdos_renyi");
  MultilinearEvaluator F(gen.built.f);
  auto fam = ConstraintFamily::cardinality(9, 4);
  const int k = 6;
  auto traj = wdmcgp(F, fam, k);

  // exact coordinate bound from the damped update
  for (int i = 0; i <= k; ++i) {
    const double cap = 1.0 - std::pow(1.0 - 1.0 / k, i);
    for (double v : traj.iterates[i]) CHECK(v <= cap + 1e-12);
  }
  CHECK(traj.final_value >= 0.0);

  // rejects negative-valued objectives
  ValueOracle neg(4, [](const Subset& s) { return s.count() == 3 ? -1.0 : 0.0; });
  MultilinearEvaluator N(neg);
  CHECK_THROWS_AS(wdmcgp(N, ConstraintFamily::cardinality(4, 2), 4), std::invalid_argument);
}

TEST_CASE("damped ascent picks the weighted top set at every step") {
  const std::vector<double> w{5, 4, 3, 2};
  auto mod = modular_oracle(w);
  MultilinearEvaluator F(mod);
  auto traj = wdmcgp(F, ConstraintFamily::cardinality(4, 2), 8);
  for (int i = 0; i < traj.T; ++i) {
    // modular slopes are the weights; the selection maximizes residual-room
    // weighted slopes, recomputed here independently
    std::vector<std::pair<double, int>> scored;
    for (int j = 0; j < 4; ++j)
      scored.emplace_back(-(1.0 - traj.iterates[i][j]) * w[j], j);
    std::stable_sort(scored.begin(), scored.end());
    std::vector<int> expected{scored[0].second, scored[1].second};
    std::sort(expected.begin(), expected.end());
    CHECK(traj.chosen_sets[i] == expected);
  }
}

TEST_CASE("fractional greedy curvature") {
  auto mod = modular_oracle({3, 2, 1});
  MultilinearEvaluator F(mod);
  auto fam = ConstraintFamily::cardinality(3, 2);
  auto traj = dmcgp(F, fam, 40);
  auto opt = exact_opt_family(mod, fam);
  CHECK(fractional_greedy_curvature(F, traj, opt).value == doctest::Approx(0.0));

  // monotone strictly positive objectives stay below the global curvature
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto gen = gen_coverage(seed, 9, 18, 0.35, 0.0);
    auto restricted = restrict_to_positive_singletons(gen.built.dec->g());
    if (restricted.oracle.n() < 3) continue;
    MultilinearEvaluator G(restricted.oracle);
    auto family = ConstraintFamily::cardinality(restricted.oracle.n(), 3);
    auto run = dmcgp(G, family, 50);
    auto best = exact_opt_family(restricted.oracle, family);
    const double cgf = fractional_greedy_curvature(G, run, best).value;
    const double cf = curvature_global(restricted.oracle).value;
    CHECK(cgf <= cf + 1e-9);
  }
}

TEST_CASE("fractional removal-slope certificate") {
  // zero costs give a zero ratio
  auto gen = gen_coverage(1, 8, 16, 0.3, 0.0);
  MultilinearEvaluator F(gen.built.f);
  auto fam = ConstraintFamily::cardinality(8, 3);
  auto traj = dmcgp(F, fam, 30);
  CHECK(certificate_removal_fractional(*gen.built.dec, traj) == doctest::Approx(0.0));

  // integral iterates reduce the slope ratio to the discrete removal ratio
  auto priced = gen_coverage(2, 8, 16, 0.3, 1.0);
  auto discrete = greedy_prune(priced.built.f, 3);
  const double r_hat = certificate_removal(*priced.built.dec, discrete, 1.0).r_hat;
  FractionalTrajectory integral;
  for (const auto& active : discrete.realized_active_sets()) {
    std::vector<double> x(8, 0.0);
    for (int e : active.elements()) x[e] = 1.0;
    integral.iterates.push_back(x);
  }
  integral.T = static_cast<int>(integral.iterates.size());
  integral.iterates.push_back(integral.iterates.back());
  CHECK(certificate_removal_fractional(*priced.built.dec, integral) ==
        doctest::Approx(r_hat).epsilon(1e-9));

  // hand instance: ratio equals the directly computed slope ratios
  MultilinearEvaluator G(priced.built.dec->g());
  auto frac = dmcgp(MultilinearEvaluator(priced.built.f), fam, 25);
  double expected = 0;
  for (int i = 0; i < frac.T; ++i) {
    auto grad = G.gradient(frac.iterates[i]);
    for (int j = 0; j < 8; ++j)
      if (frac.iterates[i][j] > 0)
        expected = std::max(expected, priced.built.dec->cost(j) / grad[j]);
  }
  CHECK(certificate_removal_fractional(*priced.built.dec, frac) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fixed-step guarantee certified on a negative-valued decomposable instance") {
  // price every element just below its singleton benefit: singletons stay
  // positive, redundant sets go negative, and the removal-slope certificate
  // still pins the trajectory curvature
  auto gen = gen_coverage(6, 9, 20, 0.4, 0.0);
  const auto& g = gen.built.dec->g();
  std::vector<double> costs(9);
  for (int e = 0; e < 9; ++e) {
    Subset single(9);
    single.add(e);
    costs[e] = 0.9 * g.value(single);
  }
  DecomposableOracle dec(g, costs);
  auto table = value_table(dec.f());
  double lo = 0;
  for (double v : table) lo = std::min(lo, v);
  REQUIRE(lo < 0);

  const int T = 200, k = 3;
  MultilinearEvaluator F(dec.f());
  auto fam = ConstraintFamily::cardinality(9, k);
  auto traj = dmcgp(F, fam, T);
  auto opt = exact_opt_family(dec.f(), fam);
  REQUIRE(opt.value > 0);

  const double alpha = cc_curvature_total(g, true);
  const double r_hat_f = certificate_removal_fractional(dec, traj);
  CHECK(r_hat_f < 1.0);
  const double cert = alpha / (1.0 - r_hat_f);

  // measured trajectory curvature stays below the certificate
  const double cgf = fractional_greedy_curvature(F, traj, opt).value;
  CHECK(cgf <= cert + 1e-9);

  // and the certified curvature yields a valid value bound
  const double cbar = std::max(1.0, cert);
  const double err = 9.0 * 8.0 * smoothness_CF(F) / T;
  CHECK(traj.final_value >= -std::expm1(-cbar) / cbar * opt.value - err - 1e-6);
}

TEST_CASE("divergence witness") {
  // non-negative objective with positive singletons: no witness exists
  auto mono = restrict_to_positive_singletons(gen_coverage(1, 8, 16, 0.4, 0.0).built.dec->g());
  CHECK_THROWS_AS(cf_divergence_witness(mono.oracle), std::invalid_argument);

  // pricing every element just below its singleton value keeps singletons
  // positive while redundancy drives larger sets negative
  auto gen = gen_coverage(3, 8, 16, 0.4, 0.0);
  const auto& g = gen.built.dec->g();
  std::vector<double> costs(8, 0.0);
  for (int e = 0; e < 8; ++e) {
    Subset single(8);
    single.add(e);
    costs[e] = 0.9 * g.value(single);
  }
  DecomposableOracle dec(g, costs);
  for (int e = 0; e < 8; ++e) {
    Subset single(8);
    single.add(e);
    REQUIRE(dec.f().value(single) > 0);
  }

  auto table = value_table(dec.f());
  double min_val = 0;
  for (double v : table) min_val = std::min(min_val, v);
  REQUIRE(min_val < 0);  // negative somewhere by redundancy

  auto witness = cf_divergence_witness(dec.f());
  CHECK(witness.ratio <= -1e6);
  CHECK(witness.denominator > 0);
  CHECK(witness.bisection_steps <= 60);
  // the negative set is inclusion-minimal: every proper subset is non-negative
  const std::uint64_t neg_mask = witness.negative_set.mask();
  CHECK(table[neg_mask] < 0);
  for (std::uint64_t sub = (neg_mask - 1) & neg_mask;; sub = (sub - 1) & neg_mask) {
    if (sub != neg_mask) CHECK(table[sub] >= 0);
    if (sub == 0) break;
  }
}

TEST_CASE("coupling inequality for strictly positive objectives") {
  auto gen = gen_coverage(7, 8, 20, 0.4, 0.0);
  auto restricted = restrict_to_positive_singletons(gen.built.dec->g());
  const int n = restricted.oracle.n();
  REQUIRE(n >= 4);
  const double cf = curvature_global(restricted.oracle).value;
  MultilinearEvaluator F(restricted.oracle);
  Rng rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    auto x = random_point(rng, n), y = random_point(rng, n);
    std::vector<double> join(n), outside(n);
    for (int j = 0; j < n; ++j) {
      join[j] = std::max(x[j], y[j]);
      outside[j] = y[j] - std::min(x[j], y[j]);
    }
    CHECK(F.value(join) - F.value(x) >=
          (1.0 - cf) * F.value(outside) - 1e-9);
  }
}

TEST_CASE("fractional trajectory JSON round trip") {
  auto gen = gen_maxcut(4, 8, 4, "planted");
  MultilinearEvaluator F(gen.built.f);
  auto traj = dmcgp(F, ConstraintFamily::cardinality(8, 4), 20);
  auto j = traj.to_json();
  for (const char* key : {"T", "iterates", "chosen_sets", "prunes", "final_value"})
    CHECK(j.contains(key));
  auto back = FractionalTrajectory::from_json(j);
  CHECK(back.to_json().dump() == j.dump());
}

TEST_CASE("sampled ascent smoke") {
  auto gen = gen_coverage(5, 8, 16, 0.3, 0.5);
  auto fam = ConstraintFamily::cardinality(8, 3);
  auto traj = dmcgp_sampled(gen.built.f, fam, 10, 8, 42);
  CHECK(traj.sampled);
  CHECK(int(traj.iterates.size()) == 11);
  for (const auto& x : traj.iterates) CHECK(fam.in_hull(x, 1e-9));
}

TEST_CASE("diagnostics bundle") {
  auto gen = gen_maxcut(3, 9, 4, "erdos_renyi");
  MultilinearEvaluator F(gen.built.f);
  auto d = multilinear_diagnostics(F, 100);
  CHECK(d.C_F == doctest::Approx(2.0));
  CHECK(d.K_F.has_value());
  CHECK(d.error_bound == doctest::Approx(9.0 * 8.0 * 2.0 / 100.0));
}
