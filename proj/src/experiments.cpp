#include "edc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "edc/error.hpp"

namespace edc {

namespace {

using nlohmann::json;

void parallel_for(int threads, int count, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct RepErrors {
  double error = 0;  // balanced raw proportion
  double delta = 0;  // alpha-weighted
};

double mean_of(const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1)) /
         std::sqrt(static_cast<double>(v.size()));
}

CellResult make_cell(ClassifierId c, int d, std::vector<double> errors,
                     std::vector<double> deltas) {
  CellResult cell;
  cell.classifier = c;
  cell.d = d;
  cell.reps = static_cast<int>(errors.size());
  cell.mean_error = mean_of(errors);
  cell.std_error = std_error_of(errors, cell.mean_error);
  cell.per_rep_errors = std::move(errors);
  cell.per_rep_delta = std::move(deltas);
  return cell;
}

bool uses_rule(const std::vector<ClassifierId>& set, ClassifierId c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

}  // namespace

std::string classifier_name(ClassifierId c) {
  switch (c) {
    case ClassifierId::Delta0: return "delta0";
    case ClassifierId::Delta1: return "delta1";
    case ClassifierId::Delta2: return "delta2";
    case ClassifierId::Delta3: return "delta3";
    case ClassifierId::Knn1: return "knn1";
    case ClassifierId::Bayes: return "bayes";
  }
  throw Error("invalid classifier id");
}

ClassifierId classifier_from_name(const std::string& name) {
  if (name == "delta0" || name == "d0") return ClassifierId::Delta0;
  if (name == "delta1" || name == "d1") return ClassifierId::Delta1;
  if (name == "delta2" || name == "d2") return ClassifierId::Delta2;
  if (name == "delta3" || name == "d3") return ClassifierId::Delta3;
  if (name == "knn1") return ClassifierId::Knn1;
  if (name == "bayes") return ClassifierId::Bayes;
  throw Error("unknown classifier: " + name);
}

const CellResult* ExperimentResult::find(ClassifierId c, int d) const {
  for (const auto& cell : cells) {
    if (cell.classifier == c && cell.d == d) return &cell;
  }
  return nullptr;
}

double estimate_delta(double errors_on_f, double errors_on_g, double alpha) {
  return alpha * errors_on_f + (1.0 - alpha) * errors_on_g;
}

ExperimentResult run_simulation(const ExperimentConfig& cfg) {
  if (cfg.reps < 1 || cfg.dims.empty()) {
    throw Error("run_simulation: invalid configuration");
  }
  const ExampleSpec ex = example_spec(cfg.example_id);
  const auto& classifiers = cfg.classifiers;
  if (classifiers.empty()) throw Error("run_simulation: no classifiers");

  const bool want_coord = uses_rule(classifiers, ClassifierId::Delta1) ||
                          uses_rule(classifiers, ClassifierId::Delta2) ||
                          uses_rule(classifiers, ClassifierId::Delta3);
  const LogDensityFn log_f = iid_log_density(ex.f_marginal);
  const LogDensityFn log_g = iid_log_density(ex.g_marginal);

  ExperimentResult result;
  result.config = cfg;

  for (int d : cfg.dims) {
    if (d < 1) throw Error("run_simulation: d must be positive");
    // [classifier][rep]
    std::vector<std::vector<RepErrors>> per(classifiers.size(),
                                            std::vector<RepErrors>(cfg.reps));
    std::vector<double> rep_T_ff(cfg.reps), rep_T_fg(cfg.reps),
        rep_T_gg(cfg.reps);

    parallel_for(cfg.threads, cfg.reps, [&](int rep) {
      const std::uint64_t rep_seed =
          mix_seed({cfg.master_seed, static_cast<std::uint64_t>(cfg.example_id),
                    static_cast<std::uint64_t>(d),
                    static_cast<std::uint64_t>(rep)});
      Rng r_train_f(mix_seed({rep_seed, 1}));
      Rng r_train_g(mix_seed({rep_seed, 2}));
      Rng r_test_f(mix_seed({rep_seed, 3}));
      Rng r_test_g(mix_seed({rep_seed, 4}));

      const auto du = static_cast<std::size_t>(d);
      Matrix train_f = sample(ex.f_marginal, du, cfg.train_per_class, r_train_f);
      Matrix train_g = sample(ex.g_marginal, du, cfg.train_per_class, r_train_g);
      Matrix test_f = sample(ex.f_marginal, du, cfg.test_per_class, r_test_f);
      Matrix test_g = sample(ex.g_marginal, du, cfg.test_per_class, r_test_g);

      const TrainingSet ts = TrainingSet::create(train_f, train_g);
      const TrainStats stats = compute_train_stats(ts);
      const AnchorIndex index(ts.pool());
      rep_T_ff[rep] = stats.T_ff;
      rep_T_fg[rep] = stats.T_fg;
      rep_T_gg[rep] = stats.T_gg;

      Matrix knn_train;
      std::vector<std::string> knn_labels;
      if (uses_rule(classifiers, ClassifierId::Knn1)) {
        for (const auto& x : ts.class_f) {
          knn_train.push_back(x);
          knn_labels.push_back("F");
        }
        for (const auto& y : ts.class_g) {
          knn_train.push_back(y);
          knn_labels.push_back("G");
        }
      }

      std::vector<int> wrong_f(classifiers.size(), 0),
          wrong_g(classifiers.size(), 0);
      auto classify_batch = [&](const Matrix& batch, bool truth_is_f) {
        for (const auto& z : batch) {
          Discriminants disc;
          if (want_coord) {
            disc = point_discriminants_debiased(z, ts, stats, index);
          }
          for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
            int predicted;
            switch (classifiers[ci]) {
              case ClassifierId::Delta0:
                predicted =
                    point_stats_delta0_debiased(z, ts, stats) > 0.0 ? 1 : 2;
                break;
              case ClassifierId::Delta1:
                predicted = disc.d1 > 0.0 ? 1 : 2;
                break;
              case ClassifierId::Delta2:
                predicted = disc.d2 > 0.0 ? 1 : 2;
                break;
              case ClassifierId::Delta3:
                predicted = disc.d3 > 0.0 ? 1 : 2;
                break;
              case ClassifierId::Knn1:
                predicted = knn1_predict(knn_train, knn_labels, z) == "F" ? 1 : 2;
                break;
              case ClassifierId::Bayes:
                predicted = bayes_predict(log_f, log_g, z);
                break;
              default:
                throw Error("unknown classifier");
            }
            const bool wrong = truth_is_f ? (predicted != 1) : (predicted != 2);
            if (wrong) (truth_is_f ? wrong_f : wrong_g)[ci] += 1;
          }
        }
      };
      classify_batch(test_f, true);
      classify_batch(test_g, false);

      const double per_class = cfg.test_per_class;
      for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
        const double ef = wrong_f[ci] / per_class;
        const double eg = wrong_g[ci] / per_class;
        per[ci][rep].error = (wrong_f[ci] + wrong_g[ci]) / (2.0 * per_class);
        per[ci][rep].delta = estimate_delta(ef, eg, ts.alpha());
      }
    });

    for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
      std::vector<double> errors(cfg.reps), deltas(cfg.reps);
      for (int rep = 0; rep < cfg.reps; ++rep) {
        errors[rep] = per[ci][rep].error;
        deltas[rep] = per[ci][rep].delta;
      }
      result.cells.push_back(make_cell(classifiers[ci], d, std::move(errors),
                                       std::move(deltas)));
    }

    DimStats ds;
    ds.d = d;
    ds.mean_T_ff = mean_of(rep_T_ff);
    ds.mean_T_fg = mean_of(rep_T_fg);
    ds.mean_T_gg = mean_of(rep_T_gg);
    ds.regime_b = ds.mean_T_fg > std::max(ds.mean_T_ff, ds.mean_T_gg);
    result.dim_stats.push_back(ds);
  }
  return result;
}

ExperimentResult run_real_data(const LabeledDataset& data,
                               const RealDataConfig& cfg) {
  if (cfg.reps < 1) throw Error("run_real_data: reps must be positive");
  if (data.vocabulary.size() < 2) throw Error("run_real_data: need >= 2 classes");
  for (const auto& label : data.vocabulary) {
    const auto count = std::count(data.labels.begin(), data.labels.end(), label);
    if (count < 4) {
      throw Error("run_real_data: class '" + label +
                  "' has fewer than 4 observations");
    }
  }
  for (ClassifierId c : cfg.classifiers) {
    if (c == ClassifierId::Bayes || c == ClassifierId::Delta0) {
      throw Error("run_real_data: " + classifier_name(c) +
                  " is not available for real datasets");
    }
  }
  const bool multiclass = data.vocabulary.size() > 2;
  const int d = static_cast<int>(data.dim());
  const auto& classifiers = cfg.classifiers;

  std::vector<std::vector<RepErrors>> per(classifiers.size(),
                                          std::vector<RepErrors>(cfg.reps));
  std::vector<double> rep_T_ff(cfg.reps), rep_T_fg(cfg.reps),
      rep_T_gg(cfg.reps);

  parallel_for(cfg.threads, cfg.reps, [&](int rep) {
    const std::uint64_t rep_seed =
        mix_seed({cfg.master_seed, 0x5ea1da7aULL,
                  static_cast<std::uint64_t>(rep)});
    Rng split_rng(mix_seed({rep_seed, 1}));
    auto [train, test] = stratified_split(data, cfg.train_fraction, split_rng);

    const bool want_t = !multiclass;
    TrainStats pair_stats{};

    // Fit each requested rule once.
    std::vector<std::unique_ptr<BinaryModel>> binaries;
    std::vector<std::unique_ptr<OvoEnsemble>> ensembles;
    for (ClassifierId c : classifiers) {
      if (c == ClassifierId::Knn1) {
        binaries.push_back(nullptr);
        ensembles.push_back(nullptr);
        continue;
      }
      Rule rule = Rule::Delta1;
      if (c == ClassifierId::Delta2) rule = Rule::Delta2;
      if (c == ClassifierId::Delta3) rule = Rule::Delta3;
      if (multiclass) {
        ensembles.push_back(std::make_unique<OvoEnsemble>(
            OvoEnsemble::fit(rule, train.features, train.labels)));
        binaries.push_back(nullptr);
      } else {
        Matrix f, g;
        for (std::size_t i = 0; i < train.size(); ++i) {
          (train.labels[i] == data.vocabulary[0] ? f : g)
              .push_back(train.features[i]);
        }
        binaries.push_back(std::make_unique<BinaryModel>(BinaryModel::fit(
            rule, std::move(f), std::move(g), data.vocabulary[0],
            data.vocabulary[1])));
        ensembles.push_back(nullptr);
        if (want_t) pair_stats = binaries.back()->stats();
      }
    }
    rep_T_ff[rep] = pair_stats.T_ff;
    rep_T_fg[rep] = pair_stats.T_fg;
    rep_T_gg[rep] = pair_stats.T_gg;

    for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
      int wrong = 0;
      int wrong_f = 0, total_f = 0, wrong_g = 0, total_g = 0;
      for (std::size_t i = 0; i < test.size(); ++i) {
        const auto& z = test.features[i];
        std::string predicted;
        if (classifiers[ci] == ClassifierId::Knn1) {
          predicted = knn1_predict(train.features, train.labels, z);
        } else if (multiclass) {
          Rng tie_rng(mix_seed({rep_seed, 2, static_cast<std::uint64_t>(ci),
                                static_cast<std::uint64_t>(i)}));
          predicted = ensembles[ci]->predict(z, tie_rng);
        } else {
          predicted = binaries[ci]->predict_label(z);
        }
        const bool miss = predicted != test.labels[i];
        wrong += miss;
        if (!multiclass) {
          if (test.labels[i] == data.vocabulary[0]) {
            ++total_f;
            wrong_f += miss;
          } else {
            ++total_g;
            wrong_g += miss;
          }
        }
      }
      per[ci][rep].error = static_cast<double>(wrong) /
                           static_cast<double>(test.size());
      if (!multiclass && total_f > 0 && total_g > 0) {
        const double alpha = static_cast<double>(total_f) /
                             static_cast<double>(total_f + total_g);
        per[ci][rep].delta = estimate_delta(
            static_cast<double>(wrong_f) / total_f,
            static_cast<double>(wrong_g) / total_g, alpha);
      } else {
        per[ci][rep].delta = per[ci][rep].error;
      }
    }
  });

  ExperimentResult result;
  result.config.example_id = 0;
  result.config.dims = {d};
  result.config.reps = cfg.reps;
  result.config.train_per_class = 0;
  result.config.test_per_class = 0;
  result.config.classifiers = classifiers;
  result.config.master_seed = cfg.master_seed;
  for (std::size_t ci = 0; ci < classifiers.size(); ++ci) {
    std::vector<double> errors(cfg.reps), deltas(cfg.reps);
    for (int rep = 0; rep < cfg.reps; ++rep) {
      errors[rep] = per[ci][rep].error;
      deltas[rep] = per[ci][rep].delta;
    }
    result.cells.push_back(
        make_cell(classifiers[ci], d, std::move(errors), std::move(deltas)));
  }
  if (!multiclass) {
    DimStats ds;
    ds.d = d;
    ds.mean_T_ff = mean_of(rep_T_ff);
    ds.mean_T_fg = mean_of(rep_T_fg);
    ds.mean_T_gg = mean_of(rep_T_gg);
    ds.regime_b = ds.mean_T_fg > std::max(ds.mean_T_ff, ds.mean_T_gg);
    result.dim_stats.push_back(ds);
  }
  return result;
}

std::vector<OrderingVerdict> theorem5_report(const ExperimentResult& res) {
  std::vector<OrderingVerdict> out;
  for (const auto& ds : res.dim_stats) {
    const CellResult* c1 = res.find(ClassifierId::Delta1, ds.d);
    const CellResult* c2 = res.find(ClassifierId::Delta2, ds.d);
    const CellResult* c3 = res.find(ClassifierId::Delta3, ds.d);
    if (!c1 || !c2 || !c3) {
      throw Error("theorem5_report: needs delta1, delta2, and delta3 results");
    }
    OrderingVerdict v;
    v.d = ds.d;
    v.regime = ds.regime_b ? 'b' : 'a';
    auto leq_within = [](const CellResult* a, const CellResult* b) {
      const double slack = std::sqrt(a->std_error * a->std_error +
                                     b->std_error * b->std_error);
      return a->mean_error <= b->mean_error + slack;
    };
    if (ds.regime_b) {
      v.predicted = "delta2 >= delta3 >= delta1";
      v.consistent = leq_within(c1, c3) && leq_within(c3, c2);
    } else {
      v.predicted = "delta2 <= delta3 <= delta1";
      v.consistent = leq_within(c2, c3) && leq_within(c3, c1);
    }
    out.push_back(v);
  }
  return out;
}

namespace {

json config_doc(const ExperimentConfig& cfg) {
  std::vector<std::string> names;
  for (ClassifierId c : cfg.classifiers) names.push_back(classifier_name(c));
  // Thread count is deliberately omitted: results are schedule-independent.
  return json{{"example_id", cfg.example_id},
              {"dims", cfg.dims},
              {"reps", cfg.reps},
              {"train_per_class", cfg.train_per_class},
              {"test_per_class", cfg.test_per_class},
              {"classifiers", names},
              {"master_seed", cfg.master_seed}};
}

}  // namespace

std::string result_to_json(const ExperimentResult& res) {
  json cells = json::array();
  for (const auto& c : res.cells) {
    cells.push_back(json{{"classifier", classifier_name(c.classifier)},
                         {"d", c.d},
                         {"mean_error", c.mean_error},
                         {"std_error", c.std_error},
                         {"reps", c.reps},
                         {"per_rep_errors", c.per_rep_errors},
                         {"per_rep_delta", c.per_rep_delta}});
  }
  json dims = json::array();
  for (const auto& ds : res.dim_stats) {
    dims.push_back(json{{"d", ds.d},
                        {"mean_T_ff", ds.mean_T_ff},
                        {"mean_T_fg", ds.mean_T_fg},
                        {"mean_T_gg", ds.mean_T_gg},
                        {"regime", ds.regime_b ? "b" : "a"}});
  }
  const json doc{{"format_version", 1},
                 {"config", config_doc(res.config)},
                 {"cells", std::move(cells)},
                 {"dim_stats", std::move(dims)}};
  return doc.dump(2) + "\n";
}

void write_result_json(const std::string& path, const ExperimentResult& res) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << result_to_json(res);
}

void write_result_csv(const std::string& path, const ExperimentResult& res) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "# config: " << config_doc(res.config).dump() << "\n";
  out << "example,d,classifier,mean_error,std_error,reps\n";
  out.precision(17);
  for (const auto& c : res.cells) {
    out << res.config.example_id << "," << c.d << ","
        << classifier_name(c.classifier) << "," << c.mean_error << ","
        << c.std_error << "," << c.reps << "\n";
  }
}

void write_plot_csv(const std::string& path, const ExperimentResult& res) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "# config: " << config_doc(res.config).dump() << "\n";
  out << "example,classifier,d,mean_error,std_error\n";
  out.precision(17);
  for (const auto& c : res.cells) {
    out << res.config.example_id << "," << classifier_name(c.classifier) << ","
        << c.d << "," << c.mean_error << "," << c.std_error << "\n";
  }
}

}  // namespace edc
