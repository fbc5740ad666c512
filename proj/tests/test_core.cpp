#include <doctest.h>

#include <thread>

#include "subcurv/checks.hpp"
#include "subcurv/oracle.hpp"
#include "subcurv/rng.hpp"
#include "subcurv/subset.hpp"

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

// single edge 0-1
ValueOracle k2_cut() {
  return ValueOracle(2, [](const Subset& s) {
    return s.contains(0) != s.contains(1) ? 1.0 : 0.0;
  });
}

ValueOracle small_coverage(int n, int m, std::uint64_t seed, double p = 0.3) {
  Rng rng(seed);
  std::vector<std::vector<int>> covers(n);
  for (int v = 0; v < n; ++v)
    for (int item = 0; item < m; ++item)
      if (rng.uniform01() < p) covers[v].push_back(item);
  return ValueOracle(n, [covers, m](const Subset& s) {
    std::vector<char> hit(m, 0);
    for (int v : s.elements())
      for (int item : covers[v]) hit[item] = 1;
    int total = 0;
    for (char h : hit) total += h;
    return double(total);
  });
}

}  // namespace

TEST_CASE("subset membership and set operations") {
  Subset s(10);
  CHECK(s.empty());
  s.add(3);
  s.add(7);
  CHECK(s.contains(3));
  CHECK_FALSE(s.contains(4));
  CHECK(s.count() == 2);
  CHECK_THROWS_AS(s.add(10), std::out_of_range);
  CHECK_THROWS_AS((void)s.contains(-1), std::out_of_range);

  Subset t = Subset::of(10, {3, 5});
  CHECK(s.unioned(t).count() == 3);
  CHECK(s.intersected(t).elements() == std::vector<int>{3});
  CHECK(s.minus(t).elements() == std::vector<int>{7});
  CHECK(s.complement().count() == 8);
  CHECK(s.intersected(t).is_subset_of(s));

  CHECK(Subset::from_mask(10, 0x88).elements() == std::vector<int>{3, 7});
  CHECK(Subset::from_mask(10, 0x88) == s);
  CHECK_THROWS_AS(Subset::from_mask(4, 0x10), std::invalid_argument);
}

TEST_CASE("subset beyond one word") {
  Subset s(300);
  s.add(0);
  s.add(77);
  s.add(299);
  CHECK(s.count() == 3);
  CHECK(s.contains(299));
  CHECK(s.complement().count() == 297);
  CHECK_THROWS_AS((void)s.mask(), std::logic_error);
}

TEST_CASE("ground set validation") {
  CHECK_THROWS_AS(GroundSet(0), std::invalid_argument);
  CHECK_THROWS_AS(GroundSet(3, {"a"}), std::invalid_argument);
  GroundSet g(3, {"a", "b", "c"});
  CHECK(g.n == 3);
}

TEST_CASE("oracle values on frozen examples") {
  auto mod = modular_oracle({3, 2, 1});
  CHECK(mod.value(Subset::of(3, {0, 2})) == doctest::Approx(4.0));
  CHECK(mod.value(Subset(3)) == 0.0);

  auto cut = k2_cut();
  CHECK(cut.value(Subset::of(2, {0})) == 1.0);
  CHECK(cut.value(Subset::of(2, {0, 1})) == 0.0);

  CHECK_THROWS_AS(mod.value(Subset(4)), std::invalid_argument);
}

TEST_CASE("oracle query counter is shared and exact") {
  auto mod = modular_oracle({1, 1});
  auto copy = mod;
  mod.value(Subset(2));
  copy.value(Subset(2));
  CHECK(mod.eval_count() == 2);

  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&mod] {
      Subset s(2);
      for (int i = 0; i < 1000; ++i) mod.value(s);
    });
  for (auto& w : workers) w.join();
  CHECK(mod.eval_count() == 4002);
}

TEST_CASE("marginals") {
  auto mod = modular_oracle({3, 2, 1});
  CHECK(mod.marginal(1, Subset::of(3, {0})) == doctest::Approx(2.0));

  auto cut = k2_cut();
  CHECK(cut.value(Subset::of(2, {0, 1})) == 0.0);
  CHECK(cut.value(Subset::of(2, {0})) == 1.0);
  CHECK(cut.marginal(1, Subset::of(2, {0})) == doctest::Approx(-1.0));

  // members contribute zero, keeping telescoping identities valid
  CHECK(mod.marginal(0, Subset::of(3, {0})) == 0.0);
}

TEST_CASE("marginal telescoping along random chains") {
  auto g = small_coverage(9, 20, 17);
  Rng rng(5);
  for (int rep = 0; rep < 25; ++rep) {
    Subset target(9);
    for (int e = 0; e < 9; ++e)
      if (rng.uniform01() < 0.5) target.add(e);
    Subset cur(9);
    double total = 0;
    for (int e : target.elements()) {
      total += g.marginal(e, cur);
      cur.add(e);
    }
    CHECK(total == doctest::Approx(g.value(target)).epsilon(1e-9));
  }
}

TEST_CASE("submodularity check accepts modular and coverage") {
  CHECK(check_submodular(modular_oracle({3, 2, 1})).ok);
  CHECK(check_submodular(small_coverage(8, 16, 3)).ok);
}

TEST_CASE("submodularity check rejects |S|^2 with a witness") {
  ValueOracle square(3, [](const Subset& s) { return double(s.count() * s.count()); });
  auto result = check_submodular(square);
  CHECK_FALSE(result.ok);
  CHECK(result.worst_violation > 0);
  CHECK(result.witness_add >= 0);
  CHECK(result.witness_probe >= 0);
}

TEST_CASE("monotonicity check") {
  CHECK(check_monotone(small_coverage(8, 16, 3)).ok);
  CHECK_FALSE(check_monotone(k2_cut()).ok);
  CHECK_FALSE(check_monotone(modular_oracle({3, -1, 2})).ok);
}

TEST_CASE("fast monotone test matches the exhaustive one on submodular oracles") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = small_coverage(8, 14, seed);
    CHECK(monotone_given_submodular(g) == check_monotone(g).ok);
  }
  CHECK_FALSE(monotone_given_submodular(k2_cut()));
}

TEST_CASE("exhaustive checks refuse large ground sets") {
  ValueOracle big(17, [](const Subset& s) { return double(s.count()); });
  CHECK_THROWS_AS(check_submodular(big), std::invalid_argument);
  CHECK_THROWS_AS(check_monotone(big), std::invalid_argument);
}

TEST_CASE("decomposable oracle") {
  auto g = small_coverage(6, 12, 9);
  std::vector<double> costs{0.5, 0, 0.25, 1.0, 0.1, 0.3};
  DecomposableOracle dec(g, costs);
  CHECK(dec.f().value(Subset(6)) == 0.0);
  Subset s = Subset::of(6, {0, 2});
  CHECK(dec.f().value(s) == doctest::Approx(dec.g().value(s) - 0.75));
  CHECK(dec.cost(s) == doctest::Approx(0.75));

  CHECK_THROWS_AS(DecomposableOracle(g, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(DecomposableOracle(g, {1, 1, 1, 1, 1, -0.5}), std::invalid_argument);
}

TEST_CASE("value table matches direct evaluation") {
  auto g = small_coverage(6, 12, 4);
  auto table = value_table(g);
  for (std::uint64_t mask : {0ull, 5ull, 63ull, 17ull})
    CHECK(table[mask] == g.value(Subset::from_mask(6, mask)));
}
