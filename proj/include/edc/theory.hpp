#pragma once

namespace edc {

/// Limiting constants of the two populations: dmu2 is the limit of the
/// average squared mean difference across coordinates, sigma_f2/sigma_g2
/// the limits of the average marginal variances.
struct TheoryParams {
  double dmu2 = 0;
  double sigma_f2 = 1;
  double sigma_g2 = 1;
  int m = 20;
  int n = 20;
};

/// Large-d limits of the pooled sample angular distances within and between
/// classes, plus their energy-distance combination theta_star.
struct ThetaConstants {
  double theta_ff = 0;
  double theta_gg = 0;
  double theta_fg = 0;
  double theta_star = 0;  // 2*theta_fg - theta_ff - theta_gg
};

ThetaConstants theta_constants(const TheoryParams& p);

/// True exactly when theta_star vanishes, i.e. when the populations agree
/// in both limiting location gap and limiting scale.
bool separation_is_zero(const TheoryParams& p);

}  // namespace edc
