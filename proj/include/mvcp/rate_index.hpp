#ifndef MVCP_RATE_INDEX_HPP
#define MVCP_RATE_INDEX_HPP

#include <cstddef>
#include <vector>

namespace mvcp {

// Flat complete binary tree over per-vertex rates: O(log n) point update and
// O(log n) proportional sampling. Leaves hold exact per-vertex rates; every
// internal node is the rounded sum of its two children, so there is no
// cumulative drift beyond summation order.
class RateIndex {
 public:
  explicit RateIndex(std::size_t n) : n_(n) {
    cap_ = 1;
    while (cap_ < (n_ > 0 ? n_ : 1)) cap_ <<= 1;
    tree_.assign(2 * cap_, 0.0);
  }

  std::size_t size() const { return n_; }
  double total() const { return tree_[1]; }
  double get(std::size_t i) const { return tree_[cap_ + i]; }

  void set(std::size_t i, double w) {
    std::size_t p = cap_ + i;
    tree_[p] = w;
    for (p >>= 1; p >= 1; p >>= 1) {
      tree_[p] = tree_[2 * p] + tree_[2 * p + 1];
      if (p == 1) break;
    }
  }

  template <typename RateFn>
  void rebuild(RateFn&& rate_of) {
    for (std::size_t i = 0; i < cap_; ++i)
      tree_[cap_ + i] = (i < n_) ? rate_of(i) : 0.0;
    for (std::size_t p = cap_ - 1; p >= 1; --p)
      tree_[p] = tree_[2 * p] + tree_[2 * p + 1];
  }

  // Proportional selection from u in [0,1); total() must be positive.
  std::size_t sample(double u) const {
    double target = u * tree_[1];
    std::size_t node = 1;
    while (node < cap_) {
      double left = tree_[2 * node];
      if (target < left) {
        node = 2 * node;
      } else {
        target -= left;
        node = 2 * node + 1;
      }
    }
    std::size_t idx = node - cap_;
    if (idx < n_ && tree_[node] > 0.0) return idx;
    // Rounding pushed the target past the last positive leaf; fall back to
    // the first vertex with positive rate.
    for (std::size_t i = 0; i < n_; ++i)
      if (tree_[cap_ + i] > 0.0) return i;
    return 0;
  }

 private:
  std::size_t n_, cap_;
  std::vector<double> tree_;
};

}  // namespace mvcp

#endif
