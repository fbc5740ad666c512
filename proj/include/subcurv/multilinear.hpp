#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subcurv/oracle.hpp"

namespace subcurv {

/// Exact multilinear extension F(x) = E[f(R(x))] over a precomputed value
/// table. One evaluation is O(2^n); a full gradient is O(n 2^n) via the
/// shared inclusion-probability weights. Requires n <= 20.
class MultilinearEvaluator {
 public:
  explicit MultilinearEvaluator(const ValueOracle& f, int max_n = 20);

  int n() const { return n_; }

  double value(const std::vector<double>& x) const;
  std::vector<double> gradient(const std::vector<double>& x) const;
  double slope(const std::vector<double>& x, int j) const;
  double mixed_partial(const std::vector<double>& x, int j, int l) const;

  double value_of_mask(std::uint64_t mask) const { return table_[mask]; }
  const std::vector<double>& table() const { return table_; }
  double min_table_value() const;

 private:
  std::vector<double> weights(const std::vector<double>& x) const;
  void check_point(const std::vector<double>& x) const;

  int n_ = 0;
  std::vector<double> table_;
};

/// One-shot exact extension value (builds the table internally).
double F_exact(const ValueOracle& f, const std::vector<double>& x);

struct SampledValue {
  double estimate = 0;
  double std_error = 0;
};

/// Monte-Carlo estimate of F(x) from independent inclusion draws.
SampledValue F_sampled(const ValueOracle& f, const std::vector<double>& x,
                       int samples, std::uint64_t seed);

/// Exact slope of the extension in coordinate j (independent of x_j).
double slope(const ValueOracle& f, const std::vector<double>& x, int j);

/// Smoothness constant: max over coordinate pairs and vertices of the mixed
/// partial magnitude (mixed partials are multilinear in the remaining
/// coordinates, so vertex enumeration is exact). Requires n <= 14.
double smoothness_CF(const ValueOracle& f);
double smoothness_CF(const MultilinearEvaluator& F);

/// Higher-order remainder constant sum_{r>=2} C(n,r) * max_{|R|=r} |d_R F|,
/// brute-forced at vertices. Computed only for n <= 12 (absent otherwise).
std::optional<double> remainder_constant_KF(const MultilinearEvaluator& F);

}  // namespace subcurv
