#pragma once

#include "edc/angular.hpp"

namespace edc {

/// Two labeled training samples. Class F carries m vectors, class G carries
/// n vectors; both estimator families need m >= 2 and n >= 2.
struct TrainingSet {
  Matrix class_f;
  Matrix class_g;

  static TrainingSet create(Matrix f, Matrix g);

  std::size_t m() const { return class_f.size(); }
  std::size_t n() const { return class_g.size(); }
  std::size_t dim() const { return class_f.front().size(); }
  double alpha() const {
    return static_cast<double>(m()) / static_cast<double>(m() + n());
  }
  AnchorPool pool() const { return AnchorPool{class_f, class_g}; }
};

/// Pooled training statistics. Lowercase t entries are vector-level
/// (the delta0 path), uppercase T entries are coordinatewise.
struct TrainStats {
  double t_ff = 0, t_gg = 0, t_fg = 0;
  double T_ff = 0, T_gg = 0, T_fg = 0;
  double w_bar_star = 0;  // 2*T_fg - T_ff - T_gg
  double s_fg = 0;        // T_ff - T_gg, kept signed
};

/// Per-test-point scores consumed by the decision rules.
struct Discriminants {
  double d1 = 0;   // L_G - L_F
  double d2 = 0;   // (w_bar_star * d1 + s_fg * S(z)) / 2
  double d3 = 0;   // (w_bar_star * sign(d1) + s_fg * sign(S(z))) / 2
  double s_z = 0;  // S(z)
};

/// Separation measures derived from a coordinatewise T triple.
struct SeparationMeasures {
  double w_bar_star = 0;
  double tau_bar = 0;
  double psi_bar = 0;
};

/// sign(x) with sign(0) = 0.
inline double sign(double x) { return (x > 0.0) - (x < 0.0); }

/// Computes all pairwise pooled statistics over the training set. The
/// anchor pool for every distance evaluation is the full training sample.
TrainStats compute_train_stats(const TrainingSet& ts);

/// Vector-level score l_G(z) - l_F(z) used by delta0.
double point_stats_delta0(VecView z, const TrainingSet& ts,
                          const TrainStats& stats);

/// Coordinatewise discriminants for delta1/delta2/delta3.
Discriminants point_discriminants(VecView z, const TrainingSet& ts,
                                  const TrainStats& stats);

/// Overloads reusing a prebuilt AnchorIndex for batch prediction. The index
/// must have been built from ts's pool.
Discriminants point_discriminants(VecView z, const TrainingSet& ts,
                                  const TrainStats& stats,
                                  const AnchorIndex& index);

/// Discriminants renormalized as if each pairwise average left the pair's own
/// sample members out of its anchor pool. A pair's own members contribute a
/// zero angle, so the numerators are unchanged and only the denominators
/// move: training-pair averages scale by N/(N-2) and test-point averages by
/// N/(N-1), with N = m + n. This equalizes the number of degenerate anchors
/// between training pairs (two members in the pool) and test pairs (one),
/// which otherwise biases S(z) and the location score unevenly across the
/// two classes as d grows.
Discriminants point_discriminants_debiased(VecView z, const TrainingSet& ts,
                                           const TrainStats& stats,
                                           const AnchorIndex& index);

/// Same renormalization applied to the vector-level delta0 score.
double point_stats_delta0_debiased(VecView z, const TrainingSet& ts,
                                   const TrainStats& stats);

SeparationMeasures tau_psi_from_T(double T_ff, double T_gg, double T_fg);

}  // namespace edc
