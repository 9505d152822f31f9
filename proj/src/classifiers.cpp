#include "edc/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "edc/error.hpp"

namespace edc {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Delta0: return "delta0";
    case Rule::Delta1: return "delta1";
    case Rule::Delta2: return "delta2";
    case Rule::Delta3: return "delta3";
  }
  throw Error("rule_name: invalid rule");
}

Rule rule_from_name(const std::string& name) {
  if (name == "delta0" || name == "d0") return Rule::Delta0;
  if (name == "delta1" || name == "d1") return Rule::Delta1;
  if (name == "delta2" || name == "d2") return Rule::Delta2;
  if (name == "delta3" || name == "d3") return Rule::Delta3;
  throw Error("unknown rule: " + name);
}

BinaryModel::BinaryModel(Rule rule, TrainingSet ts, TrainStats stats,
                         std::string lf, std::string lg)
    : rule_(rule),
      training_(std::move(ts)),
      stats_(stats),
      label_f_(std::move(lf)),
      label_g_(std::move(lg)),
      index_(training_.class_f, training_.class_g) {}

BinaryModel BinaryModel::fit(Rule rule, Matrix class_f, Matrix class_g,
                             std::string label_f, std::string label_g) {
  TrainingSet ts = TrainingSet::create(std::move(class_f), std::move(class_g));
  TrainStats stats = compute_train_stats(ts);
  return BinaryModel(rule, std::move(ts), stats, std::move(label_f),
                     std::move(label_g));
}

double BinaryModel::discriminant(VecView z) const {
  if (rule_ == Rule::Delta0) {
    return point_stats_delta0(z, training_, stats_);
  }
  const Discriminants d = point_discriminants(z, training_, stats_, index_);
  switch (rule_) {
    case Rule::Delta1: return d.d1;
    case Rule::Delta2: return d.d2;
    case Rule::Delta3: return d.d3;
    default: return 0.0;
  }
}

int BinaryModel::predict(VecView z) const {
  return discriminant(z) > 0.0 ? 1 : 2;
}

const std::string& BinaryModel::predict_label(VecView z) const {
  return predict(z) == 1 ? label_f_ : label_g_;
}

OvoEnsemble OvoEnsemble::fit(Rule rule, const Matrix& points,
                             const std::vector<std::string>& labels) {
  if (points.size() != labels.size()) {
    throw Error("fit_ovo: points and labels differ in length");
  }
  // Vocabulary in order of first appearance.
  std::vector<std::string> vocab;
  std::map<std::string, Matrix> by_class;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!by_class.count(labels[i])) vocab.push_back(labels[i]);
    by_class[labels[i]].push_back(points[i]);
  }
  if (vocab.size() < 2) throw Error("fit_ovo: need at least 2 classes");
  for (const auto& l : vocab) {
    if (by_class[l].size() < 2) {
      throw Error("fit_ovo: class '" + l + "' has fewer than 2 observations");
    }
  }

  OvoEnsemble ens;
  ens.labels_ = vocab;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    for (std::size_t j = i + 1; j < vocab.size(); ++j) {
      ens.models_.push_back(BinaryModel::fit(rule, by_class[vocab[i]],
                                             by_class[vocab[j]], vocab[i],
                                             vocab[j]));
    }
  }
  return ens;
}

OvoEnsemble OvoEnsemble::from_models(std::vector<std::string> labels,
                                     std::vector<BinaryModel> models) {
  if (labels.size() < 2 ||
      models.size() != labels.size() * (labels.size() - 1) / 2) {
    throw Error("OvoEnsemble: model count does not match label pairs");
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j, ++k) {
      if (models[k].label_f() != labels[i] || models[k].label_g() != labels[j]) {
        throw Error("OvoEnsemble: model " + std::to_string(k) +
                    " does not cover the expected label pair");
      }
    }
  }
  OvoEnsemble ens;
  ens.labels_ = std::move(labels);
  ens.models_ = std::move(models);
  return ens;
}

std::string OvoEnsemble::predict(VecView z, Rng& rng) const {
  std::map<std::string, int> votes;
  for (const auto& l : labels_) votes[l] = 0;
  for (const auto& model : models_) {
    votes[model.predict_label(z)] += 1;
  }
  int best = -1;
  for (const auto& [label, count] : votes) best = std::max(best, count);
  std::vector<std::string> tied;
  for (const auto& l : labels_) {
    if (votes[l] == best) tied.push_back(l);
  }
  if (tied.size() == 1) return tied.front();
  return tied[rng.uniform_index(tied.size())];
}

std::string knn1_predict(const Matrix& points,
                         const std::vector<std::string>& labels, VecView z) {
  if (points.empty()) throw Error("knn1_predict: empty training set");
  if (points.size() != labels.size()) {
    throw Error("knn1_predict: points and labels differ in length");
  }
  std::size_t best = 0;
  double best_d2 = -1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.size() != z.size()) throw Error("knn1_predict: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double diff = p[k] - z[k];
      d2 += diff * diff;
    }
    if (best_d2 < 0.0 || d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  return labels[best];
}

int bayes_predict(const LogDensityFn& log_f, const LogDensityFn& log_g,
                  VecView z) {
  const double lf = log_f(z);
  const double lg = log_g(z);
  if (std::isnan(lf) || std::isnan(lg)) {
    throw Error("bayes_predict: density evaluated to NaN");
  }
  return lf >= lg ? 1 : 2;
}

LogDensityFn iid_log_density(const MarginalSpec& spec) {
  return [spec](VecView z) {
    double acc = 0.0;
    for (double x : z) acc += log_density(spec, x);
    return acc;
  };
}

}  // namespace edc
