#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "edc/distributions.hpp"
#include "edc/error.hpp"

using namespace edc;

TEST_CASE("Rng streams are deterministic and seed-sensitive") {
  Rng a(123), b(123), c(124);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  bool differs = false;
  Rng a2(123);
  for (int i = 0; i < 10; ++i) differs |= a2.next_u64() != c.next_u64();
  CHECK(differs);
}

TEST_CASE("uniform stays in [0, 1) with a sane mean") {
  Rng rng(5);
  double acc = 0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    acc += u;
  }
  CHECK(acc / 20000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("normal draws have roughly standard moments") {
  Rng rng(6);
  double s1 = 0, s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
  }
  CHECK(s1 / n == doctest::Approx(0.0).epsilon(0.05));
  CHECK(std::fabs(s1 / n) < 0.05);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("uniform_index covers its range") {
  Rng rng(7);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const std::size_t k = rng.uniform_index(5);
    REQUIRE(k < 5);
    hits[k] += 1;
  }
  CHECK(*std::min_element(hits.begin(), hits.end()) > 700);
}

TEST_CASE("mix_seed is order-sensitive and stable") {
  CHECK(mix_seed({1, 2}) == mix_seed({1, 2}));
  CHECK(mix_seed({1, 2}) != mix_seed({2, 1}));
  CHECK(mix_seed({1}) != mix_seed({1, 0}));
}

TEST_CASE("example registry matches the simulation families") {
  const ExampleSpec e1 = example_spec(1);
  CHECK(e1.f_marginal.kind == MarginalKind::Normal);
  CHECK(e1.f_marginal.self.a == 1.0);
  CHECK(e1.f_marginal.self.b == 1.0);
  CHECK(e1.g_marginal.self.b == 2.0);

  const ExampleSpec e2 = example_spec(2);
  CHECK(e2.f_marginal.kind == MarginalKind::Normal);
  CHECK(e2.f_marginal.self.a == 0.0);
  CHECK(e2.f_marginal.self.b == 3.0);
  CHECK(e2.g_marginal.kind == MarginalKind::StudentT);
  CHECK(e2.g_marginal.self.a == 3.0);

  const ExampleSpec e3 = example_spec(3);
  CHECK(e3.f_marginal.kind == MarginalKind::Cauchy);
  CHECK(e3.f_marginal.self.a == 0.0);
  CHECK(e3.g_marginal.self.a == 1.0);
  CHECK(e3.g_marginal.self.b == 1.0);

  const ExampleSpec e4 = example_spec(4);
  CHECK(e4.f_marginal.self.b == 1.0);
  CHECK(e4.g_marginal.self.b == 2.0);

  const ExampleSpec e5 = example_spec(5);
  CHECK(e5.f_marginal.kind == MarginalKind::Mixture);
  CHECK(e5.f_marginal.w1 == 0.9);
  CHECK(e5.f_marginal.comp1.kind == MarginalKind::Normal);
  CHECK(e5.f_marginal.comp2.kind == MarginalKind::Cauchy);
  CHECK(e5.f_marginal.comp2.a == 4.0);
  CHECK(e5.g_marginal.comp1.b == 4.0);

  CHECK_THROWS_AS(example_spec(0), Error);
  CHECK_THROWS_AS(example_spec(6), Error);
}

TEST_CASE("sample produces the requested shape, deterministically") {
  const auto spec = MarginalSpec::normal(1.0, 2.0);
  Rng a(9), b(9);
  const Matrix m1 = sample(spec, 4, 7, a);
  const Matrix m2 = sample(spec, 4, 7, b);
  REQUIRE(m1.size() == 7);
  REQUIRE(m1.front().size() == 4);
  CHECK(m1 == m2);
}

TEST_CASE("log_density matches closed forms") {
  SUBCASE("normal") {
    const auto spec = MarginalSpec::normal(1.0, 4.0);
    const double x = 2.5;
    const double expected =
        -0.5 * std::log(2 * M_PI * 4.0) - (x - 1.0) * (x - 1.0) / 8.0;
    CHECK(log_density(spec, x) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("cauchy") {
    const auto spec = MarginalSpec::cauchy(1.0, 2.0);
    const double x = 0.0;
    const double expected = std::log(2.0 / (M_PI * (4.0 + 1.0)));
    CHECK(log_density(spec, x) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("student t with 3 degrees of freedom") {
    const auto spec = MarginalSpec::student_t(3.0);
    const double x = 1.5;
    const double expected =
        std::log(6.0 * std::sqrt(3.0) / (M_PI * std::pow(3.0 + x * x, 2)));
    CHECK(log_density(spec, x) == doctest::Approx(expected).epsilon(1e-10));
  }
  SUBCASE("mixture") {
    const auto spec = MarginalSpec::mixture(0.9, MarginalSpec::normal(1, 1),
                                            0.1, MarginalSpec::cauchy(4, 1));
    const double x = 2.0;
    const double expected =
        std::log(0.9 * std::exp(log_density(MarginalSpec::normal(1, 1), x)) +
                 0.1 * std::exp(log_density(MarginalSpec::cauchy(4, 1), x)));
    CHECK(log_density(spec, x) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("cdf matches closed forms and is monotone") {
  SUBCASE("normal") {
    const auto spec = MarginalSpec::normal(0.0, 1.0);
    CHECK(cdf(spec, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cdf(spec, 1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  }
  SUBCASE("cauchy") {
    const auto spec = MarginalSpec::cauchy(1.0, 2.0);
    CHECK(cdf(spec, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cdf(spec, 3.0) == doctest::Approx(0.75).epsilon(1e-12));
  }
  SUBCASE("student t with 3 degrees of freedom") {
    const auto spec = MarginalSpec::student_t(3.0);
    CHECK(cdf(spec, 0.0) == doctest::Approx(0.5).epsilon(1e-10));
    // t_3 upper 5% point.
    CHECK(cdf(spec, 2.353363435) == doctest::Approx(0.95).epsilon(1e-6));
  }
  SUBCASE("mixture, against numeric integration of the density") {
    const auto spec = MarginalSpec::mixture(0.9, MarginalSpec::normal(1, 2),
                                            0.1, MarginalSpec::cauchy(4, 1));
    double prev = 0.0;
    for (double x = -20; x <= 20; x += 0.5) {
      const double p = cdf(spec, x);
      CHECK(p >= prev - 1e-12);
      prev = p;
    }
    CHECK(cdf(spec, 1e8) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("empirical distribution of draws tracks the cdf") {
  struct Case {
    MarginalSpec spec;
    double at;
  };
  const Case cases[] = {
      {MarginalSpec::normal(1.0, 2.0), 2.0},
      {MarginalSpec::cauchy(0.0, 1.0), 1.0},
      {MarginalSpec::student_t(3.0), -0.5},
      {MarginalSpec::mixture(0.9, MarginalSpec::normal(1, 1), 0.1,
                             MarginalSpec::cauchy(4, 1)),
       3.0},
  };
  Rng rng(17);
  for (const auto& c : cases) {
    const int n = 40000;
    int below = 0;
    for (int i = 0; i < n; ++i) below += sample1(c.spec, rng) <= c.at;
    const double expected = cdf(c.spec, c.at);
    CHECK(static_cast<double>(below) / n ==
          doctest::Approx(expected).epsilon(0.03));
  }
}

TEST_CASE("student_t sampling requires integer degrees-of-freedom") {
  CHECK_THROWS_AS(MarginalSpec::student_t(0.0), Error);
  Rng rng(3);
  CHECK_THROWS_AS(sample1(MarginalSpec::student_t(2.5), rng), Error);
  CHECK_NOTHROW(sample1(MarginalSpec::student_t(3.0), rng));
}

TEST_CASE("mixture weights must sum to one") {
  CHECK_THROWS_AS(MarginalSpec::mixture(0.7, MarginalSpec::normal(0, 1), 0.1,
                                        MarginalSpec::cauchy(0, 1)),
                  Error);
  CHECK_THROWS_AS(MarginalSpec::mixture(
                      0.5,
                      MarginalSpec::mixture(0.5, MarginalSpec::normal(0, 1),
                                            0.5, MarginalSpec::normal(1, 1)),
                      0.5, MarginalSpec::cauchy(0, 1)),
                  Error);
}

TEST_CASE("describe is human-readable") {
  CHECK(MarginalSpec::normal(1.0, 2.0).describe().find("N(") !=
        std::string::npos);
  CHECK(MarginalSpec::student_t(3.0).describe().find("t") !=
        std::string::npos);
}
