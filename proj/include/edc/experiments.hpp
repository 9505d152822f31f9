#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edc/dataio.hpp"

namespace edc {

enum class ClassifierId { Delta0, Delta1, Delta2, Delta3, Knn1, Bayes };

std::string classifier_name(ClassifierId c);
ClassifierId classifier_from_name(const std::string& name);

struct ExperimentConfig {
  int example_id = 1;
  std::vector<int> dims = {5, 10, 25, 50, 100, 250, 500, 1000};
  int reps = 100;
  int train_per_class = 20;
  int test_per_class = 100;
  std::vector<ClassifierId> classifiers = {
      ClassifierId::Delta1, ClassifierId::Delta2, ClassifierId::Delta3};
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 = hardware concurrency; never affects results
};

struct CellResult {
  ClassifierId classifier;
  int d = 0;
  double mean_error = 0;
  double std_error = 0;
  int reps = 0;
  std::vector<double> per_rep_errors;  // balanced test-error proportions
  std::vector<double> per_rep_delta;   // alpha-weighted error estimates
};

struct DimStats {
  int d = 0;
  double mean_T_ff = 0;
  double mean_T_fg = 0;
  double mean_T_gg = 0;
  bool regime_b = false;  // T_fg > max(T_ff, T_gg)
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;      // ordered by (d, classifier)
  std::vector<DimStats> dim_stats;    // one per d

  const CellResult* find(ClassifierId c, int d) const;
};

/// Runs the seeded Monte Carlo protocol: per repetition, fresh train and
/// test samples, one fit, one error rate per classifier. Deterministic
/// given master_seed at any thread count.
ExperimentResult run_simulation(const ExperimentConfig& cfg);

struct RealDataConfig {
  int reps = 100;
  double train_fraction = 0.5;
  std::vector<ClassifierId> classifiers = {
      ClassifierId::Delta1, ClassifierId::Delta2, ClassifierId::Delta3};
  std::uint64_t master_seed = 0;
  int threads = 0;
};

/// Repeated stratified 50/50 splits; one-vs-one voting when the dataset has
/// three or more classes.
ExperimentResult run_real_data(const LabeledDataset& data,
                               const RealDataConfig& cfg);

/// Alpha-weighted misclassification estimate.
double estimate_delta(double errors_on_f, double errors_on_g, double alpha);

struct OrderingVerdict {
  int d = 0;
  char regime = 'a';         // 'a': max(T_ff, T_gg) > T_fg, else 'b'
  std::string predicted;     // e.g. "d2 <= d3 <= d1"
  bool consistent = false;   // within one pooled standard error
};

/// Checks the predicted error ordering between delta1/delta2/delta3 per
/// dimension against the observed regime of the mean T statistics.
std::vector<OrderingVerdict> theorem5_report(const ExperimentResult& res);

/// JSON document with full per-rep detail and the resolved config + seed.
std::string result_to_json(const ExperimentResult& res);

void write_result_json(const std::string& path, const ExperimentResult& res);
void write_result_csv(const std::string& path, const ExperimentResult& res);
void write_plot_csv(const std::string& path, const ExperimentResult& res);

}  // namespace edc
