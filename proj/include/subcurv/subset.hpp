#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcurv {

/// Ground set of n elements with a fixed order (indices 0..n-1).
/// The order is fixed at construction; all tie-breaking rules depend on it.
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // optional display names

  explicit GroundSet(int n_, std::vector<std::string> labels_ = {})
      : n(n_), labels(std::move(labels_)) {
    if (n < 1) throw std::invalid_argument("ground set must have at least one element");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw std::invalid_argument("label count must match ground-set size");
  }
};

/// Subset of a fixed-order ground set, stored as a bit set.
/// Supports arbitrary n; the 64-bit mask view is available only for n <= 64,
/// which covers every exact-enumeration path.
class Subset {
 public:
  Subset() = default;

  explicit Subset(int n) : n_(n), words_((n + 63) / 64, 0) {
    if (n < 0) throw std::invalid_argument("negative ground-set size");
  }

  static Subset from_mask(int n, std::uint64_t mask) {
    if (n > 64) throw std::invalid_argument("mask view limited to n <= 64");
    Subset s(n);
    if (n > 0) {
      std::uint64_t valid = (n == 64) ? ~0ull : ((1ull << n) - 1);
      if (mask & ~valid) throw std::invalid_argument("mask has bits outside ground set");
      s.words_[0] = mask;
    }
    return s;
  }

  static Subset of(int n, const std::vector<int>& elems) {
    Subset s(n);
    for (int e : elems) s.add(e);
    return s;
  }

  int n() const { return n_; }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  bool contains(int e) const {
    check_elem(e);
    return (words_[e >> 6] >> (e & 63)) & 1ull;
  }

  void add(int e) {
    check_elem(e);
    words_[e >> 6] |= (1ull << (e & 63));
  }

  void remove(int e) {
    check_elem(e);
    words_[e >> 6] &= ~(1ull << (e & 63));
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

  std::uint64_t mask() const {
    if (n_ > 64) throw std::logic_error("mask view limited to n <= 64");
    return words_.empty() ? 0 : words_[0];
  }

  void assign_mask(std::uint64_t mask) {
    if (n_ > 64) throw std::logic_error("mask view limited to n <= 64");
    words_[0] = mask;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for (int e = 0; e < n_; ++e)
      if (contains(e)) out.push_back(e);
    return out;
  }

  Subset unioned(const Subset& o) const {
    Subset r = binary_check(o);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
    return r;
  }

  Subset intersected(const Subset& o) const {
    Subset r = binary_check(o);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }

  Subset minus(const Subset& o) const {
    Subset r = binary_check(o);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
    return r;
  }

  Subset complement() const {
    Subset r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    int tail = n_ & 63;
    if (tail && !r.words_.empty()) r.words_.back() &= (1ull << tail) - 1;
    return r;
  }

  bool is_subset_of(const Subset& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ground-set mismatch");
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool operator==(const Subset& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const Subset& o) const { return !(*this == o); }
  bool operator<(const Subset& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (size_t i = words_.size(); i-- > 0;)
      if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
    return false;
  }

 private:
  void check_elem(int e) const {
    if (e < 0 || e >= n_) throw std::out_of_range("element outside ground set");
  }
  Subset binary_check(const Subset& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ground-set mismatch");
    return Subset(n_);
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace subcurv
