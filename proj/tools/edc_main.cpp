// Command-line front end for the energy-distance classifier toolkit.
//
// Subcommands: simulate, fit, predict, bench, theory.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "edc/dataio.hpp"
#include "edc/error.hpp"
#include "edc/experiments.hpp"
#include "edc/theory.hpp"

namespace {

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed) {
  if (!seed_given) {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  std::cout << "seed: " << seed << "\n";
  return seed;
}

std::vector<edc::ClassifierId> parse_classifiers(const std::string& csv) {
  std::vector<edc::ClassifierId> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(edc::classifier_from_name(item));
  }
  if (out.empty()) throw edc::Error("no classifiers given");
  return out;
}

void print_table(const edc::ExperimentResult& res) {
  std::printf("%8s %10s %12s %12s %6s\n", "d", "classifier", "mean_error",
              "std_error", "reps");
  for (const auto& c : res.cells) {
    std::printf("%8d %10s %11.4f%% %11.4f%% %6d\n", c.d,
                edc::classifier_name(c.classifier).c_str(),
                100.0 * c.mean_error, 100.0 * c.std_error, c.reps);
  }
  for (const auto& ds : res.dim_stats) {
    std::printf("d=%d: mean T_ff=%.5f T_fg=%.5f T_gg=%.5f regime=%s\n", ds.d,
                ds.mean_T_ff, ds.mean_T_fg, ds.mean_T_gg,
                ds.regime_b ? "b (T_fg > max)" : "a (max > T_fg)");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Data-adaptive energy-distance classifiers for HDLSS data"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the Monte Carlo protocol");
  edc::ExperimentConfig cfg;
  std::string sim_dims = "5,10,25,50,100,250,500,1000";
  std::string sim_classifiers = "d1,d2,d3";
  std::uint64_t sim_seed = 0;
  bool sim_seed_given = false;
  std::string sim_out, sim_plot, sim_csv;
  sim->add_option("--example", cfg.example_id, "Example id (1..5)")
      ->required()
      ->check(CLI::Range(1, 5));
  sim->add_option("--dims", sim_dims, "Comma-separated dimensions");
  sim->add_option("--reps", cfg.reps, "Repetitions (default 100)");
  sim->add_option("--train-per-class", cfg.train_per_class, "Default 20");
  sim->add_option("--test-per-class", cfg.test_per_class, "Default 100");
  sim->add_option("--classifiers", sim_classifiers,
                  "Subset of d0,d1,d2,d3,knn1,bayes");
  sim->add_option_function<std::uint64_t>(
         "--seed", [&](std::uint64_t s) { sim_seed = s; sim_seed_given = true; },
         "Master seed (default: random)");
  sim->add_option("--out", sim_out, "Result JSON path");
  sim->add_option("--csv", sim_csv, "Result CSV path");
  sim->add_option("--plot-data", sim_plot, "Plot-data CSV path");
  sim->add_option("--threads", cfg.threads,
                  "Worker threads (default: hardware)");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a model from a labeled CSV");
  std::string fit_rule = "d1", fit_data, fit_label, fit_model;
  bool fit_no_header = false;
  fit->add_option("--rule", fit_rule, "d0|d1|d2|d3")->required();
  fit->add_option("--data", fit_data, "Labeled CSV")->required();
  fit->add_option("--label", fit_label, "Label column (name or index)")
      ->required();
  fit->add_option("--model", fit_model, "Output model path")->required();
  fit->add_flag("--no-header", fit_no_header, "CSV has no header row");

  // predict
  auto* pred = app.add_subcommand("predict", "Predict labels with a model");
  std::string pred_model, pred_data, pred_out;
  bool pred_no_header = false;
  std::uint64_t pred_seed = 0;
  bool pred_seed_given = false;
  pred->add_option("--model", pred_model, "Model file")->required();
  pred->add_option("--data", pred_data, "Feature CSV (no label column)")
      ->required();
  pred->add_option("--out", pred_out, "Output CSV")->required();
  pred->add_flag("--no-header", pred_no_header, "CSV has no header row");
  pred->add_option_function<std::uint64_t>(
      "--seed",
      [&](std::uint64_t s) { pred_seed = s; pred_seed_given = true; },
      "Tie-break seed for ensembles");

  // bench
  auto* bench = app.add_subcommand("bench", "Repeated stratified splits on a "
                                            "real dataset");
  std::string bench_data, bench_label, bench_classifiers = "d1,d2,d3,knn1";
  std::string bench_out;
  edc::RealDataConfig bench_cfg;
  std::uint64_t bench_seed = 0;
  bool bench_seed_given = false, bench_no_header = false;
  bench->add_option("--data", bench_data, "Labeled CSV")->required();
  bench->add_option("--label", bench_label, "Label column")->required();
  bench->add_option("--reps", bench_cfg.reps, "Repetitions (default 100)");
  bench->add_option("--classifiers", bench_classifiers,
                    "Subset of d1,d2,d3,knn1");
  bench->add_option_function<std::uint64_t>(
      "--seed",
      [&](std::uint64_t s) { bench_seed = s; bench_seed_given = true; },
      "Master seed (default: random)");
  bench->add_option("--out", bench_out, "Result JSON path");
  bench->add_flag("--no-header", bench_no_header, "CSV has no header row");
  bench->add_option("--threads", bench_cfg.threads, "Worker threads");

  // theory
  auto* theory = app.add_subcommand("theory", "Asymptotic constants");
  edc::TheoryParams tp;
  theory->add_option("--dmu2", tp.dmu2, "Limiting mean separation")->required();
  theory->add_option("--sigmaf2", tp.sigma_f2, "Limiting variance of F")
      ->required();
  theory->add_option("--sigmag2", tp.sigma_g2, "Limiting variance of G")
      ->required();
  theory->add_option("--m", tp.m, "Sample size of class F (default 20)");
  theory->add_option("--n", tp.n, "Sample size of class G (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (sim->parsed()) {
    cfg.master_seed = resolve_seed(sim_seed_given, sim_seed);
    cfg.dims.clear();
    std::stringstream ss(sim_dims);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.dims.push_back(std::stoi(item));
    }
    cfg.classifiers = parse_classifiers(sim_classifiers);
    const edc::ExperimentResult res = edc::run_simulation(cfg);
    print_table(res);
    if (!sim_out.empty()) edc::write_result_json(sim_out, res);
    if (!sim_csv.empty()) edc::write_result_csv(sim_csv, res);
    if (!sim_plot.empty()) edc::write_plot_csv(sim_plot, res);
    return 0;
  }

  if (fit->parsed()) {
    const edc::LabeledDataset ds =
        edc::load_csv(fit_data, fit_label, !fit_no_header);
    if (ds.vocabulary.size() < 2) {
      throw edc::Error("fit: dataset has fewer than 2 classes");
    }
    const edc::Rule rule = edc::rule_from_name(fit_rule);
    if (ds.vocabulary.size() == 2) {
      edc::Matrix f, g;
      for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.labels[i] == ds.vocabulary[0] ? f : g).push_back(ds.features[i]);
      }
      const auto model = edc::BinaryModel::fit(rule, std::move(f), std::move(g),
                                               ds.vocabulary[0],
                                               ds.vocabulary[1]);
      edc::save_model(fit_model, model);
    } else {
      const auto ens = edc::OvoEnsemble::fit(rule, ds.features, ds.labels);
      edc::save_model(fit_model, ens);
    }
    std::cout << "model written to " << fit_model << "\n";
    return 0;
  }

  if (pred->parsed()) {
    const std::uint64_t seed = resolve_seed(pred_seed_given, pred_seed);
    const edc::LoadedModel model = edc::load_model(pred_model);
    const edc::Matrix points =
        edc::load_csv_features(pred_data, !pred_no_header);
    std::ofstream out(pred_out);
    if (!out) throw edc::Error("cannot write file: " + pred_out);
    out << "row,label\n";
    if (model.is_ovo) {
      const edc::OvoEnsemble ens = model.ovo();
      for (std::size_t i = 0; i < points.size(); ++i) {
        edc::Rng rng(edc::mix_seed({seed, static_cast<std::uint64_t>(i)}));
        out << i << "," << ens.predict(points[i], rng) << "\n";
      }
    } else {
      for (std::size_t i = 0; i < points.size(); ++i) {
        out << i << "," << model.binary().predict_label(points[i]) << "\n";
      }
    }
    std::cout << "predictions written to " << pred_out << "\n";
    return 0;
  }

  if (bench->parsed()) {
    bench_cfg.master_seed = resolve_seed(bench_seed_given, bench_seed);
    bench_cfg.classifiers = parse_classifiers(bench_classifiers);
    const edc::LabeledDataset ds =
        edc::load_csv(bench_data, bench_label, !bench_no_header);
    const edc::ExperimentResult res = edc::run_real_data(ds, bench_cfg);
    print_table(res);
    if (!bench_out.empty()) edc::write_result_json(bench_out, res);
    return 0;
  }

  if (theory->parsed()) {
    const edc::ThetaConstants t = edc::theta_constants(tp);
    std::printf("theta_ff   = %.10f\n", t.theta_ff);
    std::printf("theta_gg   = %.10f\n", t.theta_gg);
    std::printf("theta_fg   = %.10f\n", t.theta_fg);
    std::printf("theta_star = %.10f\n", t.theta_star);
    std::printf("separation is %s\n",
                edc::separation_is_zero(tp) ? "zero (F and G agree in limit)"
                                            : "positive");
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const edc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
