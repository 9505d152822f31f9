#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "edc/distributions.hpp"
#include "edc/energy_stats.hpp"
#include "edc/error.hpp"

using namespace edc;

namespace {

TrainingSet hand_set() {
  return TrainingSet::create({{0.0}, {2.0}}, {{1.0}, {3.0}});
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t d) {
  Matrix m(rows, Vec(d));
  for (auto& row : m) {
    for (auto& x : row) x = 4.0 * (rng.uniform() - 0.5);
  }
  return m;
}

// Reference evaluation of rho_bar_hat built from 1-d slices and rho0_vec,
// independent of the sorted-column fast path.
double rho_bar_via_slices(VecView u, VecView v, const TrainingSet& ts) {
  const std::size_t total = ts.m() + ts.n();
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    double count = 0.0;
    for (const auto& x : ts.class_f) {
      count += rho0_vec(Vec{u[k]}, Vec{v[k]}, Vec{x[k]});
    }
    for (const auto& y : ts.class_g) {
      count += rho0_vec(Vec{u[k]}, Vec{v[k]}, Vec{y[k]});
    }
    acc += count / static_cast<double>(total);
  }
  return acc / static_cast<double>(u.size());
}

TrainStats brute_force_stats(const TrainingSet& ts) {
  TrainStats s;
  const std::size_t m = ts.m(), n = ts.n();
  double tb = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      tb += rho_bar_via_slices(ts.class_f[i], ts.class_f[j], ts);
    }
  }
  s.T_ff = 2.0 * tb / (static_cast<double>(m) * (m - 1));
  tb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      tb += rho_bar_via_slices(ts.class_g[i], ts.class_g[j], ts);
    }
  }
  s.T_gg = 2.0 * tb / (static_cast<double>(n) * (n - 1));
  tb = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      tb += rho_bar_via_slices(ts.class_f[i], ts.class_g[j], ts);
    }
  }
  s.T_fg = tb / (static_cast<double>(m) * n);
  return s;
}

}  // namespace

TEST_CASE("hand-enumerated training statistics at d = 1") {
  const TrainingSet ts = hand_set();
  const TrainStats s = compute_train_stats(ts);
  CHECK(s.T_ff == 0.25);
  CHECK(s.T_gg == 0.25);
  CHECK(s.T_fg == 0.125);
  CHECK(s.w_bar_star == -0.25);
  CHECK(s.s_fg == 0.0);
  // At d = 1 the two estimator families coincide.
  CHECK(s.t_ff == s.T_ff);
  CHECK(s.t_gg == s.T_gg);
  CHECK(s.t_fg == s.T_fg);
}

TEST_CASE("compute_train_stats rejects tiny classes") {
  CHECK_THROWS_AS(TrainingSet::create({{0.0}}, {{1.0}, {3.0}}), Error);
  CHECK_THROWS_AS(TrainingSet::create({{0.0}, {1.0}}, {{2.0}}), Error);
  CHECK_THROWS_AS(TrainingSet::create({{0.0}, {1.0, 2.0}}, {{2.0}, {3.0}}),
                  Error);
}

TEST_CASE("hand-enumerated point scores at z = 0") {
  const TrainingSet ts = hand_set();
  const TrainStats s = compute_train_stats(ts);
  const Discriminants d = point_discriminants(Vec{0.0}, ts, s);
  CHECK(d.d1 == 0.125);
  CHECK(d.s_z == 0.0);
  CHECK(d.d2 == -0.015625);
  CHECK(d.d3 == -0.125);
  CHECK(point_stats_delta0(Vec{0.0}, ts, s) == 0.125);
}

TEST_CASE("point operations reject dimension mismatches") {
  const TrainingSet ts = hand_set();
  const TrainStats s = compute_train_stats(ts);
  CHECK_THROWS_AS(point_discriminants(Vec{0.0, 1.0}, ts, s), Error);
  CHECK_THROWS_AS(point_stats_delta0(Vec{0.0, 1.0}, ts, s), Error);
}

TEST_CASE("tau/psi identities") {
  SUBCASE("worked example") {
    const auto r = tau_psi_from_T(0.3, 0.4, 0.5);
    CHECK(r.w_bar_star == doctest::Approx(0.3));
    CHECK(r.tau_bar == doctest::Approx(0.05));
    CHECK(r.psi_bar == doctest::Approx(0.2));
  }
  SUBCASE("identical distributions give zero separation") {
    const auto r = tau_psi_from_T(0.37, 0.37, 0.37);
    CHECK(r.w_bar_star == 0.0);
    CHECK(r.tau_bar == 0.0);
    CHECK(r.psi_bar == 0.0);
  }
  SUBCASE("reported simulation triple") {
    const auto r = tau_psi_from_T(0.28362, 0.3461, 0.31839);
    CHECK(r.w_bar_star == doctest::Approx(0.00706).epsilon(1e-6));
  }
  SUBCASE("convex-combination identity on random triples") {
    Rng rng(21);
    for (int trial = 0; trial < 10000; ++trial) {
      const double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
      const auto r = tau_psi_from_T(a, b, c);
      const double direct = (c - a) * (c - a) + (c - b) * (c - b);
      CHECK(std::fabs(direct - r.tau_bar) < 1e-12);
    }
  }
}

TEST_CASE("permutation invariance of training statistics") {
  Rng rng(22);
  Matrix f = random_matrix(rng, 5, 3), g = random_matrix(rng, 4, 3);
  const TrainStats base = compute_train_stats(TrainingSet::create(f, g));
  std::reverse(f.begin(), f.end());
  std::rotate(g.begin(), g.begin() + 2, g.end());
  const TrainStats perm = compute_train_stats(TrainingSet::create(f, g));
  CHECK(base.T_ff == perm.T_ff);
  CHECK(base.T_gg == perm.T_gg);
  CHECK(base.T_fg == perm.T_fg);
  // The vector-level sums run over anchors in storage order, so reordering
  // rows can move the last bit; everything else is exact.
  CHECK(base.t_ff == doctest::Approx(perm.t_ff).epsilon(1e-14));
  CHECK(base.t_gg == doctest::Approx(perm.t_gg).epsilon(1e-14));
  CHECK(base.t_fg == doctest::Approx(perm.t_fg).epsilon(1e-14));
}

TEST_CASE("class swap antisymmetry for balanced samples") {
  Rng rng(23);
  const Matrix f = random_matrix(rng, 6, 2), g = random_matrix(rng, 6, 2);
  const TrainingSet ts = TrainingSet::create(f, g);
  const TrainingSet swapped = TrainingSet::create(g, f);
  const TrainStats a = compute_train_stats(ts);
  const TrainStats b = compute_train_stats(swapped);
  CHECK(a.T_ff == b.T_gg);
  CHECK(a.T_gg == b.T_ff);
  // The cross sum visits the pairs transposed, so only near-exact.
  CHECK(a.T_fg == doctest::Approx(b.T_fg).epsilon(1e-14));
  CHECK(a.w_bar_star == doctest::Approx(b.w_bar_star).epsilon(1e-13));
  CHECK(a.s_fg == -b.s_fg);

  const Vec z = {0.3, -0.7};
  const Discriminants da = point_discriminants(z, ts, a);
  const Discriminants db = point_discriminants(z, swapped, b);
  CHECK(da.d1 == doctest::Approx(-db.d1).epsilon(1e-14));
  CHECK(da.d2 == doctest::Approx(-db.d2).epsilon(1e-14));
  CHECK(da.d3 == doctest::Approx(-db.d3).epsilon(1e-14));
  CHECK(da.s_z == doctest::Approx(db.s_z).epsilon(1e-14));
}

TEST_CASE("d = 1 collapse: delta0 score equals d1 exactly") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix f = random_matrix(rng, 4, 1), g = random_matrix(rng, 5, 1);
    const TrainingSet ts = TrainingSet::create(f, g);
    const TrainStats s = compute_train_stats(ts);
    for (int p = 0; p < 5; ++p) {
      const Vec z = {4.0 * (rng.uniform() - 0.5)};
      CHECK(point_stats_delta0(z, ts, s) == point_discriminants(z, ts, s).d1);
    }
  }
}

TEST_CASE("coordinatewise fast path matches the slice-based oracle exactly") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + rng.uniform_index(4);
    const Matrix f = random_matrix(rng, 4, d), g = random_matrix(rng, 3, d);
    const TrainingSet ts = TrainingSet::create(f, g);
    const TrainStats fast = compute_train_stats(ts);
    const TrainStats brute = brute_force_stats(ts);
    CHECK(fast.T_ff == brute.T_ff);
    CHECK(fast.T_gg == brute.T_gg);
    CHECK(fast.T_fg == brute.T_fg);
    CHECK(fast.T_ff >= 0.0);
    CHECK(fast.T_ff <= 1.0);
    CHECK(fast.T_gg <= 1.0);
    CHECK(fast.T_fg <= 1.0);
  }
}
