#include "edc/energy_stats.hpp"

#include <cmath>

#include "edc/error.hpp"

namespace edc {

TrainingSet TrainingSet::create(Matrix f, Matrix g) {
  if (f.size() < 2 || g.size() < 2) {
    throw Error("insufficient sample: need at least 2 observations per class");
  }
  const std::size_t d = f.front().size();
  if (d < 1) throw Error("TrainingSet: dimension must be at least 1");
  for (const auto& row : f) {
    if (row.size() != d) throw Error("TrainingSet: ragged dimensions");
  }
  for (const auto& row : g) {
    if (row.size() != d) throw Error("TrainingSet: ragged dimensions");
  }
  return TrainingSet{std::move(f), std::move(g)};
}

TrainStats compute_train_stats(const TrainingSet& ts) {
  const std::size_t m = ts.m();
  const std::size_t n = ts.n();
  if (m < 2 || n < 2) throw Error("insufficient sample");

  const AnchorPool pool = ts.pool();
  const AnchorIndex index(pool);
  const Matrix& X = ts.class_f;
  const Matrix& Y = ts.class_g;

  TrainStats s;

  // Within-class sums run over unordered pairs; each pair appears twice in
  // the i != j sum with identical value.
  double tb_ff = 0, t_ff = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      tb_ff += index.rho_bar_hat(X[i], X[j]);
      t_ff += rho_hat(X[i], X[j], pool);
    }
  }
  double tb_gg = 0, t_gg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      tb_gg += index.rho_bar_hat(Y[i], Y[j]);
      t_gg += rho_hat(Y[i], Y[j], pool);
    }
  }
  double tb_fg = 0, t_fg = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tb_fg += index.rho_bar_hat(X[i], Y[j]);
      t_fg += rho_hat(X[i], Y[j], pool);
    }
  }

  const double mm = static_cast<double>(m) * static_cast<double>(m - 1);
  const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  s.T_ff = 2.0 * tb_ff / mm;
  s.T_gg = 2.0 * tb_gg / nn;
  s.T_fg = tb_fg / mn;
  s.t_ff = 2.0 * t_ff / mm;
  s.t_gg = 2.0 * t_gg / nn;
  s.t_fg = t_fg / mn;
  s.w_bar_star = 2.0 * s.T_fg - s.T_ff - s.T_gg;
  s.s_fg = s.T_ff - s.T_gg;
  return s;
}

namespace {

// Assembles the delta1/2/3 scores from the four averaged distances.
Discriminants combine_discriminants(double Tf, double Tg, double T_ff,
                                    double T_gg, double T_fg) {
  Discriminants d;
  d.d1 = (Tg - 0.5 * T_gg) - (Tf - 0.5 * T_ff);
  d.s_z = Tf + Tg - 0.5 * (T_ff + T_gg) - T_fg;
  const double w_bar_star = 2.0 * T_fg - T_ff - T_gg;
  const double s_fg = T_ff - T_gg;
  d.d2 = 0.5 * w_bar_star * d.d1 + 0.5 * s_fg * d.s_z;
  d.d3 = 0.5 * w_bar_star * sign(d.d1) + 0.5 * s_fg * sign(d.s_z);
  return d;
}

void point_averages_delta0(VecView z, const TrainingSet& ts, double* tf,
                           double* tg) {
  if (z.size() != ts.dim()) throw Error("point_stats_delta0: dimension mismatch");
  const AnchorPool pool = ts.pool();
  *tf = 0;
  *tg = 0;
  for (const auto& x : ts.class_f) *tf += rho_hat(x, z, pool);
  for (const auto& y : ts.class_g) *tg += rho_hat(y, z, pool);
  *tf /= static_cast<double>(ts.m());
  *tg /= static_cast<double>(ts.n());
}

void point_averages(VecView z, const TrainingSet& ts, const AnchorIndex& index,
                    double* Tf, double* Tg) {
  if (z.size() != ts.dim()) throw Error("point_discriminants: dimension mismatch");
  *Tf = 0;
  *Tg = 0;
  for (const auto& x : ts.class_f) *Tf += index.rho_bar_hat(x, z);
  for (const auto& y : ts.class_g) *Tg += index.rho_bar_hat(y, z);
  *Tf /= static_cast<double>(ts.m());
  *Tg /= static_cast<double>(ts.n());
}

}  // namespace

double point_stats_delta0(VecView z, const TrainingSet& ts,
                          const TrainStats& stats) {
  double tf, tg;
  point_averages_delta0(z, ts, &tf, &tg);
  const double l_f = tf - 0.5 * stats.t_ff;
  const double l_g = tg - 0.5 * stats.t_gg;
  return l_g - l_f;
}

double point_stats_delta0_debiased(VecView z, const TrainingSet& ts,
                                   const TrainStats& stats) {
  double tf, tg;
  point_averages_delta0(z, ts, &tf, &tg);
  const double total = static_cast<double>(ts.m() + ts.n());
  const double ct = total / (total - 2.0);
  const double cz = total / (total - 1.0);
  const double l_f = cz * tf - 0.5 * ct * stats.t_ff;
  const double l_g = cz * tg - 0.5 * ct * stats.t_gg;
  return l_g - l_f;
}

Discriminants point_discriminants(VecView z, const TrainingSet& ts,
                                  const TrainStats& stats,
                                  const AnchorIndex& index) {
  double Tf, Tg;
  point_averages(z, ts, index, &Tf, &Tg);
  return combine_discriminants(Tf, Tg, stats.T_ff, stats.T_gg, stats.T_fg);
}

Discriminants point_discriminants_debiased(VecView z, const TrainingSet& ts,
                                           const TrainStats& stats,
                                           const AnchorIndex& index) {
  double Tf, Tg;
  point_averages(z, ts, index, &Tf, &Tg);
  const double total = static_cast<double>(ts.m() + ts.n());
  const double ct = total / (total - 2.0);
  const double cz = total / (total - 1.0);
  return combine_discriminants(cz * Tf, cz * Tg, ct * stats.T_ff,
                               ct * stats.T_gg, ct * stats.T_fg);
}

Discriminants point_discriminants(VecView z, const TrainingSet& ts,
                                  const TrainStats& stats) {
  const AnchorIndex index(ts.pool());
  return point_discriminants(z, ts, stats, index);
}

SeparationMeasures tau_psi_from_T(double T_ff, double T_gg, double T_fg) {
  SeparationMeasures r;
  r.w_bar_star = 2.0 * T_fg - T_ff - T_gg;
  const double s = T_ff - T_gg;
  r.tau_bar = 0.5 * r.w_bar_star * r.w_bar_star + 0.5 * s * s;
  r.psi_bar = 0.5 * r.w_bar_star + 0.5 * std::fabs(s);
  return r;
}

}  // namespace edc
