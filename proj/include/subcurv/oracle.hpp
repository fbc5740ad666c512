#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "subcurv/subset.hpp"

namespace subcurv {

using EvalFn = std::function<double(const Subset&)>;

/// Black-box value oracle for a normalized set function f with f(empty) = 0.
/// Immutable after construction except for the query counter, which is atomic
/// so concurrent readers may share one oracle. Copies share the counter.
class ValueOracle {
 public:
  ValueOracle() = default;

  ValueOracle(int n, EvalFn fn)
      : n_(n), fn_(std::move(fn)), evals_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    if (n < 1) throw std::invalid_argument("oracle needs a nonempty ground set");
    if (!fn_) throw std::invalid_argument("oracle needs an evaluation function");
  }

  int n() const { return n_; }
  bool valid() const { return static_cast<bool>(fn_); }

  double value(const Subset& s) const {
    if (s.n() != n_) throw std::invalid_argument("ground-set mismatch");
    evals_->fetch_add(1, std::memory_order_relaxed);
    return fn_(s);
  }

  /// Marginal gain f(S + e) - f(S). Returns 0 when e is already in S, which
  /// keeps telescoping identities valid.
  double marginal(int e, const Subset& s) const {
    if (s.contains(e)) return 0.0;
    Subset t = s;
    t.add(e);
    return value(t) - value(s);
  }

  std::uint64_t eval_count() const { return evals_->load(std::memory_order_relaxed); }

 private:
  int n_ = 0;
  EvalFn fn_;
  std::shared_ptr<std::atomic<std::uint64_t>> evals_;
};

/// Decomposable objective f = g - l with g monotone submodular non-negative
/// and l a non-negative modular cost. Exposes g and the costs separately; the
/// combined f view carries its own query counter.
class DecomposableOracle {
 public:
  DecomposableOracle() = default;

  DecomposableOracle(ValueOracle g, std::vector<double> costs)
      : g_(std::move(g)), costs_(std::make_shared<const std::vector<double>>(std::move(costs))) {
    if (static_cast<int>(costs_->size()) != g_.n())
      throw std::invalid_argument("cost vector size must match ground set");
    for (double c : *costs_)
      if (!(c >= 0.0)) throw std::invalid_argument("costs must be non-negative");
    auto g_copy = g_;
    auto costs_ptr = costs_;
    f_ = ValueOracle(g_.n(), [g_copy, costs_ptr](const Subset& s) {
      double total = g_copy.value(s);
      for (int e : s.elements()) total -= (*costs_ptr)[e];
      return total;
    });
  }

  int n() const { return g_.n(); }
  const ValueOracle& g() const { return g_; }
  const ValueOracle& f() const { return f_; }
  const std::vector<double>& costs() const { return *costs_; }

  double cost(int e) const { return costs_->at(e); }
  double cost(const Subset& s) const {
    double total = 0;
    for (int e : s.elements()) total += (*costs_)[e];
    return total;
  }

  bool valid() const { return g_.valid(); }

 private:
  ValueOracle g_;
  std::shared_ptr<const std::vector<double>> costs_;
  ValueOracle f_;
};

}  // namespace subcurv
