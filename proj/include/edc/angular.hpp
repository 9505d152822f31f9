#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edc {

using Vec = std::vector<double>;
using Matrix = std::vector<Vec>;
using VecView = std::span<const double>;

/// arccos with the argument clamped to [-1, 1], so that round-off on
/// near-collinear vectors never produces NaN. Result in [0, pi].
double safe_acos(double x);

/// Angular distance at anchor w between u and v, normalized by pi.
/// Returns 0 when u or v coincides with w (exact component-wise equality),
/// or when a norm product underflows to zero. Value in [0, 1].
double rho0_vec(VecView u, VecView v, VecView w);

/// One-dimensional angular distance: the angle between a-c and b-c is
/// either 0 or pi, so the result is 1 exactly when c lies strictly
/// between a and b, and 0 otherwise.
double rho0_scalar(double a, double b, double c);

/// The pooled anchors defining the sample angular distance: all m training
/// points of the first class and all n of the second.
struct AnchorPool {
  Matrix x_anchors;
  Matrix y_anchors;

  std::size_t size() const { return x_anchors.size() + y_anchors.size(); }
  std::size_t dim() const;
};

/// Sample angular distance: average of rho0_vec(u, v, w) over all pooled
/// anchors w. Anchors equal to u or v contribute 0 through rho0_vec's
/// degenerate branch; they are not skipped and the sum is still divided
/// by m + n.
double rho_hat(VecView u, VecView v, const AnchorPool& pool);

/// Coordinatewise average of the one-dimensional sample angular distances.
/// Equals rho_hat exactly when d = 1.
double rho_bar_hat(VecView u, VecView v, const AnchorPool& pool);

/// Per-coordinate sorted anchor values. rho0_scalar(a, b, c) is 1 exactly
/// when c lies strictly inside (min(a,b), max(a,b)), so each coordinate's
/// contribution reduces to a range count over the sorted column.
class AnchorIndex {
 public:
  AnchorIndex(const Matrix& x_anchors, const Matrix& y_anchors);
  explicit AnchorIndex(const AnchorPool& pool)
      : AnchorIndex(pool.x_anchors, pool.y_anchors) {}

  std::size_t dim() const { return columns_.size(); }
  std::size_t anchor_count() const { return anchor_count_; }

  /// Fraction of anchors whose k-th coordinate lies strictly between a and b.
  double rho_hat_coord(double a, double b, std::size_t k) const;

  /// Fast path for rho_bar_hat; agrees exactly with the naive evaluation.
  double rho_bar_hat(VecView u, VecView v) const;

 private:
  std::vector<Vec> columns_;  // columns_[k] sorted ascending
  std::size_t anchor_count_ = 0;
};

}  // namespace edc
