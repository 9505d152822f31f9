#include "edc/theory.hpp"

#include <cmath>

#include "edc/error.hpp"

namespace edc {

namespace {

void validate(const TheoryParams& p) {
  if (!(p.sigma_f2 > 0.0) || !(p.sigma_g2 > 0.0)) {
    throw Error("theta_constants: variances must be strictly positive");
  }
  if (p.dmu2 < 0.0) throw Error("theta_constants: dmu2 must be nonnegative");
  if (p.m < 1 || p.n < 1) throw Error("theta_constants: m, n must be positive");
}

}  // namespace

ThetaConstants theta_constants(const TheoryParams& p) {
  validate(p);
  const double m = p.m, n = p.n;
  const double total = p.dmu2 + p.sigma_f2 + p.sigma_g2;
  const double q_g = (p.dmu2 + p.sigma_g2) / total;
  const double q_f = (p.dmu2 + p.sigma_f2) / total;

  ThetaConstants t;
  t.theta_ff =
      (m * M_PI / 3.0 + n * std::acos(q_g)) / (M_PI * (m + n));
  t.theta_gg =
      (m * std::acos(q_f) + n * M_PI / 3.0) / (M_PI * (m + n));
  t.theta_fg =
      0.5 - (m * std::acos(q_g) + n * std::acos(q_f)) / (2.0 * M_PI * (m + n));
  t.theta_star = 2.0 * t.theta_fg - t.theta_ff - t.theta_gg;
  return t;
}

bool separation_is_zero(const TheoryParams& p) {
  validate(p);
  const bool zero = (p.dmu2 == 0.0) && (p.sigma_f2 == p.sigma_g2);
  const ThetaConstants t = theta_constants(p);
  // Cross-check against the closed form; a disagreement means a bug.
  if (zero != (std::fabs(t.theta_star) < 1e-12)) {
    throw Error("separation_is_zero: inconsistent with theta_constants");
  }
  return zero;
}

}  // namespace edc
