#include "subcurv/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "subcurv/checks.hpp"
#include "subcurv/rng.hpp"

namespace subcurv {

MultilinearEvaluator::MultilinearEvaluator(const ValueOracle& f, int max_n)
    : n_(f.n()) {
  if (n_ > max_n || n_ > 20)
    throw std::invalid_argument("exact multilinear path infeasible: ground set too large");
  table_ = value_table(f, 20);
}

void MultilinearEvaluator::check_point(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("point dimension mismatch");
  for (double v : x)
    if (!(v >= -1e-12 && v <= 1 + 1e-12))
      throw std::invalid_argument("fractional point outside the unit cube");
}

std::vector<double> MultilinearEvaluator::weights(const std::vector<double>& x) const {
  std::vector<double> w(std::size_t(1) << n_);
  w[0] = 1.0;
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t bit = 1ull << i;
    const double xi = std::clamp(x[i], 0.0, 1.0);
    for (std::uint64_t mask = 0; mask < bit; ++mask) {
      w[mask | bit] = w[mask] * xi;
      w[mask] *= 1.0 - xi;
    }
  }
  return w;
}

double MultilinearEvaluator::value(const std::vector<double>& x) const {
  check_point(x);
  const auto w = weights(x);
  double total = 0;
  for (std::size_t mask = 0; mask < w.size(); ++mask) total += w[mask] * table_[mask];
  return total;
}

std::vector<double> MultilinearEvaluator::gradient(const std::vector<double>& x) const {
  check_point(x);
  const auto w = weights(x);
  std::vector<double> grad(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const std::uint64_t bit = 1ull << j;
    double total = 0;
    for (std::uint64_t mask = 0; mask < w.size(); ++mask) {
      if (mask & bit) continue;
      // w[mask] + w[mask|bit] is the inclusion weight of the other coordinates
      total += (w[mask] + w[mask | bit]) * (table_[mask | bit] - table_[mask]);
    }
    grad[j] = total;
  }
  return grad;
}

double MultilinearEvaluator::slope(const std::vector<double>& x, int j) const {
  check_point(x);
  if (j < 0 || j >= n_) throw std::out_of_range("coordinate outside ground set");
  const auto w = weights(x);
  const std::uint64_t bit = 1ull << j;
  double total = 0;
  for (std::uint64_t mask = 0; mask < w.size(); ++mask) {
    if (mask & bit) continue;
    total += (w[mask] + w[mask | bit]) * (table_[mask | bit] - table_[mask]);
  }
  return total;
}

double MultilinearEvaluator::mixed_partial(const std::vector<double>& x, int j, int l) const {
  check_point(x);
  if (j == l) throw std::invalid_argument("mixed partial needs distinct coordinates");
  const auto w = weights(x);
  const std::uint64_t bj = 1ull << j, bl = 1ull << l;
  double total = 0;
  for (std::uint64_t mask = 0; mask < w.size(); ++mask) {
    if (mask & (bj | bl)) continue;
    const double q = w[mask] + w[mask | bj] + w[mask | bl] + w[mask | bj | bl];
    total += q * (table_[mask | bj | bl] - table_[mask | bj] - table_[mask | bl] + table_[mask]);
  }
  return total;
}

double MultilinearEvaluator::min_table_value() const {
  double lo = table_[0];
  for (double v : table_) lo = std::min(lo, v);
  return lo;
}

double F_exact(const ValueOracle& f, const std::vector<double>& x) {
  return MultilinearEvaluator(f).value(x);
}

SampledValue F_sampled(const ValueOracle& f, const std::vector<double>& x,
                       int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  if (static_cast<int>(x.size()) != f.n()) throw std::invalid_argument("point dimension mismatch");
  Rng rng(seed);
  double mean = 0, m2 = 0;
  Subset draw(f.n());
  for (int s = 1; s <= samples; ++s) {
    for (int e = 0; e < f.n(); ++e) {
      if (rng.uniform01() < x[e])
        draw.add(e);
      else
        draw.remove(e);
    }
    const double v = f.value(draw);
    const double delta = v - mean;
    mean += delta / s;
    m2 += delta * (v - mean);
  }
  SampledValue out;
  out.estimate = mean;
  out.std_error = samples > 1 ? std::sqrt(m2 / (samples - 1) / samples) : 0.0;
  return out;
}

double slope(const ValueOracle& f, const std::vector<double>& x, int j) {
  return MultilinearEvaluator(f).slope(x, j);
}

double smoothness_CF(const MultilinearEvaluator& F) {
  const int n = F.n();
  if (n > 14) throw std::invalid_argument("smoothness constant infeasible: ground set too large");
  const auto& table = F.table();
  double best = 0;
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const std::uint64_t bj = 1ull << j, bl = 1ull << l;
      for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
        if (mask & (bj | bl)) continue;
        const double d = table[mask | bj | bl] - table[mask | bj] - table[mask | bl] + table[mask];
        best = std::max(best, std::abs(d));
      }
    }
  }
  return best;
}

double smoothness_CF(const ValueOracle& f) {
  if (f.n() > 14) throw std::invalid_argument("smoothness constant infeasible: ground set too large");
  return smoothness_CF(MultilinearEvaluator(f, 14));
}

std::optional<double> remainder_constant_KF(const MultilinearEvaluator& F) {
  const int n = F.n();
  if (n > 12) return std::nullopt;
  const auto& table = F.table();
  const std::uint64_t limit = 1ull << n;

  std::vector<double> max_by_order(n + 1, 0.0);
  for (std::uint64_t r = 1; r < limit; ++r) {
    const int order = __builtin_popcountll(r);
    if (order < 2) continue;
    const std::uint64_t comp = (limit - 1) & ~r;
    std::uint64_t s = comp;
    while (true) {
      // alternating finite difference of f over the coordinates of r at vertex s
      double diff = 0;
      std::uint64_t q = r;
      while (true) {
        const int sign_bits = order - __builtin_popcountll(q);
        diff += (sign_bits & 1) ? -table[s | q] : table[s | q];
        if (q == 0) break;
        q = (q - 1) & r;
      }
      max_by_order[order] = std::max(max_by_order[order], std::abs(diff));
      if (s == 0) break;
      s = (s - 1) & comp;
    }
  }

  double total = 0;
  double binom = double(n) * (n - 1) / 2.0;  // C(n, 2)
  for (int r = 2; r <= n; ++r) {
    total += binom * max_by_order[r];
    binom *= double(n - r) / double(r + 1);
  }
  return total;
}

}  // namespace subcurv
