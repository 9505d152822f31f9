#include "edc/angular.hpp"

#include <algorithm>
#include <cmath>

#include "edc/error.hpp"

namespace edc {

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

namespace {

bool equal_vectors(VecView a, VecView b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

void check_dims(VecView u, VecView v, VecView w) {
  if (u.size() != v.size() || u.size() != w.size()) {
    throw Error("rho0_vec: dimension mismatch");
  }
}

}  // namespace

double rho0_vec(VecView u, VecView v, VecView w) {
  check_dims(u, v, w);
  if (equal_vectors(u, w) || equal_vectors(v, w)) return 0.0;
  // The angle is identically zero when the two points coincide; skip the
  // arithmetic so rounding cannot turn it into a tiny positive value.
  if (equal_vectors(u, v)) return 0.0;

  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = u[k] - w[k];
    const double b = v[k] - w[k];
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  const double denom = std::sqrt(nu) * std::sqrt(nv);
  if (denom == 0.0) return 0.0;  // underflow without exact equality
  return safe_acos(dot / denom) / M_PI;
}

double rho0_scalar(double a, double b, double c) {
  if (a == c || b == c) return 0.0;
  return (a - c) * (b - c) < 0.0 ? 1.0 : 0.0;
}

std::size_t AnchorPool::dim() const {
  if (!x_anchors.empty()) return x_anchors.front().size();
  if (!y_anchors.empty()) return y_anchors.front().size();
  return 0;
}

double rho_hat(VecView u, VecView v, const AnchorPool& pool) {
  if (pool.size() == 0) throw Error("rho_hat: empty anchor pool");
  double sum = 0.0;
  for (const auto& w : pool.x_anchors) sum += rho0_vec(u, v, w);
  for (const auto& w : pool.y_anchors) sum += rho0_vec(u, v, w);
  return sum / static_cast<double>(pool.size());
}

double rho_bar_hat(VecView u, VecView v, const AnchorPool& pool) {
  if (pool.size() == 0) throw Error("rho_bar_hat: empty anchor pool");
  const std::size_t d = u.size();
  if (v.size() != d || pool.dim() != d) {
    throw Error("rho_bar_hat: dimension mismatch");
  }
  const double total = static_cast<double>(pool.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    double count = 0.0;
    for (const auto& w : pool.x_anchors) count += rho0_scalar(u[k], v[k], w[k]);
    for (const auto& w : pool.y_anchors) count += rho0_scalar(u[k], v[k], w[k]);
    acc += count / total;
  }
  return acc / static_cast<double>(d);
}

AnchorIndex::AnchorIndex(const Matrix& x_anchors, const Matrix& y_anchors) {
  anchor_count_ = x_anchors.size() + y_anchors.size();
  if (anchor_count_ == 0) throw Error("AnchorIndex: empty anchor pool");
  const std::size_t d =
      x_anchors.empty() ? y_anchors.front().size() : x_anchors.front().size();
  columns_.assign(d, Vec());
  for (std::size_t k = 0; k < d; ++k) columns_[k].reserve(anchor_count_);
  auto add = [&](const Matrix& m) {
    for (const auto& row : m) {
      if (row.size() != d) throw Error("AnchorIndex: ragged anchor dimensions");
      for (std::size_t k = 0; k < d; ++k) columns_[k].push_back(row[k]);
    }
  };
  add(x_anchors);
  add(y_anchors);
  for (auto& col : columns_) std::sort(col.begin(), col.end());
}

double AnchorIndex::rho_hat_coord(double a, double b, std::size_t k) const {
  const auto& col = columns_[k];
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const auto first = std::upper_bound(col.begin(), col.end(), lo);
  const auto last = std::lower_bound(first, col.end(), hi);
  return static_cast<double>(last - first) /
         static_cast<double>(anchor_count_);
}

double AnchorIndex::rho_bar_hat(VecView u, VecView v) const {
  const std::size_t d = dim();
  if (u.size() != d || v.size() != d) {
    throw Error("AnchorIndex::rho_bar_hat: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < d; ++k) acc += rho_hat_coord(u[k], v[k], k);
  return acc / static_cast<double>(d);
}

}  // namespace edc
