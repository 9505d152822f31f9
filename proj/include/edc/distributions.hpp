#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>

#include "edc/angular.hpp"

namespace edc {

/// SplitMix64 stream. Small, fast, and fully reproducible across platforms;
/// every consumer derives its own substream seed via mix_seed so that
/// parallel repetitions never share state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1).
  double uniform();

  /// Standard normal via Box-Muller (one fresh pair per call, the second
  /// value is discarded to keep the state a single 64-bit word).
  double normal();

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n);

 private:
  std::uint64_t state_;
};

/// Deterministic 64-bit mixing of seed components (master seed, repetition
/// index, role tags, ...). Order-sensitive.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

enum class MarginalKind { Normal, Cauchy, StudentT, Mixture };

/// One of the four marginal families used by the simulation registry.
/// Normal is parameterized by (mean, variance), Cauchy by (location, scale),
/// Student-t by its degrees of freedom, and Mixture by two non-mixture
/// components with weights summing to 1.
struct MarginalSpec {
  struct Component {
    MarginalKind kind = MarginalKind::Normal;
    double a = 0;  // mean / location / degrees of freedom
    double b = 1;  // variance / scale (unused for Student-t)
  };

  MarginalKind kind = MarginalKind::Normal;
  Component self;       // valid when kind != Mixture
  double w1 = 0;        // mixture weight of comp1
  Component comp1, comp2;

  static MarginalSpec normal(double mean, double variance);
  static MarginalSpec cauchy(double location, double scale);
  static MarginalSpec student_t(double nu);
  static MarginalSpec mixture(double w1, MarginalSpec c1, double w2,
                              MarginalSpec c2);

  std::string describe() const;
};

struct ExampleSpec {
  int id = 0;
  MarginalSpec f_marginal;
  MarginalSpec g_marginal;
};

/// Registry of the five simulated example families.
ExampleSpec example_spec(int id);

/// One i.i.d. draw from the marginal.
double sample1(const MarginalSpec& spec, Rng& rng);

/// count x d matrix of i.i.d. draws. Deterministic given the Rng state;
/// cells are filled row-major.
Matrix sample(const MarginalSpec& spec, std::size_t d, std::size_t count,
              Rng& rng);

double log_density(const MarginalSpec& spec, double x);

double cdf(const MarginalSpec& spec, double x);

}  // namespace edc
