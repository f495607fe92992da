// ubauc: train/eval/grid/bench driver for the univariate-surrogate AUC
// optimizers. Models and reports are JSON, grids and benchmarks CSV.
// Exit codes: 0 success, 2 usage or validation problem, 3 runtime failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ubauc/ubauc.hpp"

namespace {

struct CommonFlags {
  std::string algo = "online";
  double beta = 1.0;
  double gamma = 1e-4;
  double eta0 = 0.1;
  int epochs = 30;
  std::string shuffle = "per_epoch";
  int batch_outer_iters = 100;
  double batch_outer_tol = 1e-7;
  double batch_inner_tol = 1e-8;
  int batch_inner_iters = 500;
  int pairwise_epochs = 200;
  double pairwise_step0 = 0.5;
  bool no_scale = false;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--algo", f.algo, "online | batch | pairwise-hinge")
      ->check(CLI::IsMember({"online", "batch", "pairwise-hinge"}));
  cmd->add_option("--beta", f.beta, "least-squares weight (must be > 0 to train)");
  cmd->add_option("--gamma", f.gamma, "regularizer weight");
  cmd->add_option("--eta0", f.eta0, "online step-size scale, eta_t = eta0/sqrt(t)");
  cmd->add_option("--epochs", f.epochs, "online passes over the data");
  cmd->add_option("--shuffle", f.shuffle, "per_epoch | none | with_replacement")
      ->check(CLI::IsMember({"per_epoch", "none", "with_replacement"}));
  cmd->add_option("--batch-outer-iters", f.batch_outer_iters);
  cmd->add_option("--batch-outer-tol", f.batch_outer_tol);
  cmd->add_option("--batch-inner-tol", f.batch_inner_tol);
  cmd->add_option("--batch-inner-iters", f.batch_inner_iters);
  cmd->add_option("--pairwise-epochs", f.pairwise_epochs);
  cmd->add_option("--pairwise-step0", f.pairwise_step0);
  cmd->add_flag("--no-scale", f.no_scale, "skip the [-1,1] feature scaling");
  cmd->add_option("--seed", f.seed, "RNG seed; every report echoes it");
}

ubauc::RunConfig to_config(const CommonFlags& f, int repeats, double fraction) {
  ubauc::RunConfig cfg;
  cfg.algo = ubauc::algo_from_string(f.algo);
  cfg.objective.beta = f.beta;
  cfg.objective.gamma = f.gamma;
  cfg.eta0 = f.eta0;
  cfg.epochs = f.epochs;
  if (f.shuffle == "none") cfg.shuffle = ubauc::ShuffleMode::none;
  else if (f.shuffle == "with_replacement") cfg.shuffle = ubauc::ShuffleMode::with_replacement;
  cfg.batch_max_outer_iters = f.batch_outer_iters;
  cfg.batch_outer_tol = f.batch_outer_tol;
  cfg.batch_inner_tol = f.batch_inner_tol;
  cfg.batch_inner_max_iters = f.batch_inner_iters;
  cfg.pairwise_epochs = f.pairwise_epochs;
  cfg.pairwise_step0 = f.pairwise_step0;
  cfg.scale = !f.no_scale;
  cfg.repeats = repeats;
  cfg.fraction = fraction;
  cfg.seed = f.seed;
  return cfg;
}

void validate_for(const ubauc::RunConfig& cfg) {
  cfg.objective.validate_for_training();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ubauc::ValidationError("cannot open file for writing: " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

ubauc::Dataset load_binary(const std::string& path, std::uint64_t seed) {
  ubauc::Dataset ds = ubauc::load_libsvm(path);
  if (!ds.labels_binary()) ds = ubauc::binarize_by_class_partition(ds, seed);
  return ds;
}

int run(int argc, char** argv) {
  CLI::App app{"AUC-risk optimization with a univariate surrogate loss"};
  app.require_subcommand(1);

  // ---- train ----
  CommonFlags tf;
  std::string train_data, model_out = "model.json", report_out = "train_report.json";
  std::string scaling_out = "scaling.json";
  auto* train = app.add_subcommand("train", "train one model");
  add_common(train, tf);
  train->add_option("--data", train_data, "LIBSVM file (.gz ok)")->required();
  train->add_option("--out", model_out, "model JSON path");
  train->add_option("--report", report_out, "train report JSON path");
  train->add_option("--scaling-out", scaling_out, "scaling params JSON path (with scaling on)");

  // ---- eval ----
  CommonFlags ef;
  std::string eval_train, eval_test, eval_out = "eval_report.json";
  int repeats = 25;
  double fraction = 0.8;
  auto* eval = app.add_subcommand("eval", "repeated-subsample evaluation protocol");
  add_common(eval, ef);
  eval->add_option("--train", eval_train)->required();
  eval->add_option("--test", eval_test)->required();
  eval->add_option("--repeats", repeats, "models per evaluation (mean +- std)");
  eval->add_option("--fraction", fraction, "training subset fraction per repeat");
  eval->add_option("--out", eval_out, "eval report JSON path");

  // ---- grid ----
  CommonFlags gf;
  std::string grid_train, best_out = "best_config.json", csv_out = "grid.csv";
  std::vector<double> betas = {1e-4, 1e-3, 1e-2, 1e-1, 1, 10, 100};
  std::vector<double> gammas = betas;
  std::vector<double> eta0s = {1e-3, 1e-2, 1e-1, 1};
  double val_fraction = 0.2;
  auto* grid = app.add_subcommand("grid", "hyperparameter grid search on a validation split");
  add_common(grid, gf);
  grid->add_option("--train", grid_train)->required();
  grid->add_option("--betas", betas, "comma-separated beta grid")->delimiter(',');
  grid->add_option("--gammas", gammas, "comma-separated gamma grid")->delimiter(',');
  grid->add_option("--eta0s", eta0s, "comma-separated eta0 grid (online only)")->delimiter(',');
  grid->add_option("--val-fraction", val_fraction, "validation share of the training data");
  grid->add_option("--out", best_out, "best config JSON path");
  grid->add_option("--csv", csv_out, "full grid CSV path");

  // ---- bench ----
  CommonFlags bf;
  std::vector<std::string> synthetic_specs;
  std::vector<std::string> bench_data;
  std::string bench_out = "bench.csv";
  auto* bench = app.add_subcommand("bench", "per-pass time and memory of the online solver");
  add_common(bench, bf);
  bench->add_option("--synthetic", synthetic_specs, "spec N:d:density, repeatable");
  bench->add_option("--data", bench_data, "LIBSVM files to stream, repeatable");
  bench->add_option("--out", bench_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? 0 : 2;
  }

  if (train->parsed()) {
    ubauc::RunConfig cfg = to_config(tf, 1, 1.0);
    validate_for(cfg);
    ubauc::Dataset ds = load_binary(train_data, tf.seed);
    if (cfg.scale) {
      auto [scaled, params] = ubauc::standardize(ds);
      ds = std::move(scaled);
      write_file(scaling_out, params.to_json());
    }
    auto [model, report] = ubauc::train_with(ds, cfg, tf.seed);
    ubauc::save_model(model, model_out);
    write_file(report_out, ubauc::train_report_to_json(report, cfg));
    std::cout << "trained " << ubauc::to_string(cfg.algo) << " model on " << ds.size()
              << " examples (dim " << ds.dim << "); final objective "
              << report.final_objective() << ", train AUC risk "
              << (report.train_auc_risk.empty() ? 0.0 : report.train_auc_risk.back()) << "\n"
              << "wrote " << model_out << " and " << report_out << "\n";
    return 0;
  }

  if (eval->parsed()) {
    ubauc::RunConfig cfg = to_config(ef, repeats, fraction);
    validate_for(cfg);
    const ubauc::Dataset train_ds = load_binary(eval_train, ef.seed);
    const ubauc::Dataset test_ds = load_binary(eval_test, ef.seed);
    const ubauc::EvalReport rep = ubauc::run_eval(train_ds, test_ds, cfg);
    write_file(eval_out, rep.to_json());
    std::cout << "test AUC " << rep.auc << " +- " << rep.auc_std << " over " << rep.repeats
              << " repeats" << (rep.tie_flag ? " (ties seen)" : "") << "; wrote " << eval_out
              << "\n";
    return 0;
  }

  if (grid->parsed()) {
    ubauc::RunConfig cfg = to_config(gf, 1, 1.0);
    validate_for(cfg);
    const ubauc::Dataset train_ds = load_binary(grid_train, gf.seed);
    ubauc::GridSpec spec{betas, gammas, eta0s};
    const ubauc::GridResult res = ubauc::run_grid(train_ds, cfg, spec, val_fraction);
    write_file(best_out, ubauc::grid_best_to_json(res, cfg));
    write_file(csv_out, ubauc::grid_to_csv(res));
    std::cout << "best config: beta " << res.best.beta << ", gamma " << res.best.gamma;
    if (cfg.algo == ubauc::Algo::online) std::cout << ", eta0 " << res.best.eta0;
    std::cout << " (validation AUC " << res.best.val_auc << "); wrote " << best_out << " and "
              << csv_out << "\n";
    return 0;
  }

  if (bench->parsed()) {
    ubauc::RunConfig cfg = to_config(bf, 1, 1.0);
    std::vector<ubauc::BenchRow> rows;
    for (const auto& spec : synthetic_specs) {
      long n = 0;
      int d = 0;
      double density = 1.0;
      if (std::sscanf(spec.c_str(), "%ld:%d:%lf", &n, &d, &density) < 2 || n < 1 || d < 1) {
        throw ubauc::ValidationError("bad synthetic spec '" + spec + "', expected N:d:density");
      }
      rows.push_back(ubauc::bench_synthetic(n, d, density, cfg));
    }
    for (const auto& path : bench_data) rows.push_back(ubauc::bench_dataset(path, cfg));
    if (rows.empty()) throw ubauc::ValidationError("nothing to bench: give --synthetic or --data");
    write_file(bench_out, ubauc::bench_to_csv(rows));
    std::cout << ubauc::bench_to_csv(rows) << "wrote " << bench_out << "\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ubauc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ubauc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ubauc::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
