#pragma once

#include <functional>
#include <string>
#include <vector>

#include "edc/distributions.hpp"
#include "edc/energy_stats.hpp"

namespace edc {

enum class Rule { Delta0, Delta1, Delta2, Delta3 };

std::string rule_name(Rule r);
Rule rule_from_name(const std::string& name);

/// A fitted binary decision rule. Class 1 corresponds to label_f, class 2
/// to label_g; a test point goes to class 1 exactly when the rule's
/// discriminant is strictly positive.
class BinaryModel {
 public:
  static BinaryModel fit(Rule rule, Matrix class_f, Matrix class_g,
                         std::string label_f = "1", std::string label_g = "2");

  Rule rule() const { return rule_; }
  const TrainingSet& training() const { return training_; }
  const TrainStats& stats() const { return stats_; }
  const std::string& label_f() const { return label_f_; }
  const std::string& label_g() const { return label_g_; }

  double discriminant(VecView z) const;
  int predict(VecView z) const;  // 1 or 2
  const std::string& predict_label(VecView z) const;

 private:
  BinaryModel(Rule rule, TrainingSet ts, TrainStats stats, std::string lf,
              std::string lg);

  Rule rule_;
  TrainingSet training_;
  TrainStats stats_;
  std::string label_f_, label_g_;
  AnchorIndex index_;
};

/// One-vs-one majority vote over all unordered label pairs. Tied maxima are
/// broken uniformly at random with the caller's generator.
class OvoEnsemble {
 public:
  static OvoEnsemble fit(Rule rule, const Matrix& points,
                         const std::vector<std::string>& labels);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<BinaryModel>& models() const { return models_; }

  std::string predict(VecView z, Rng& rng) const;

  /// Rebuilds an ensemble from already-fitted pairwise models (used by the
  /// model loader). Models must cover each unordered label pair exactly once.
  static OvoEnsemble from_models(std::vector<std::string> labels,
                                 std::vector<BinaryModel> models);

 private:
  std::vector<std::string> labels_;
  std::vector<BinaryModel> models_;  // pair (i, j), i < j, in label order
};

/// 1-nearest-neighbor under Euclidean distance; distance ties go to the
/// lowest training index.
std::string knn1_predict(const Matrix& points,
                         const std::vector<std::string>& labels, VecView z);

using LogDensityFn = std::function<double(VecView)>;

/// Equal-prior likelihood comparison; ties go to class 1.
int bayes_predict(const LogDensityFn& log_f, const LogDensityFn& log_g,
                  VecView z);

/// Product log-density of i.i.d. coordinates with the given marginal.
LogDensityFn iid_log_density(const MarginalSpec& spec);

}  // namespace edc
