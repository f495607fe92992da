#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ubauc/batch.hpp"
#include "ubauc/dataset.hpp"
#include "ubauc/online.hpp"
#include "ubauc/report.hpp"

namespace ubauc {

enum class Algo { online, batch, pairwise_hinge };

Algo algo_from_string(const std::string& name);  // "online" | "batch" | "pairwise-hinge"
std::string to_string(Algo algo);

// Fully resolved run configuration; echoed into every report so a run can be
// reproduced from the report alone.
struct RunConfig {
  Algo algo = Algo::online;
  Objective objective;
  double eta0 = 0.1;
  int epochs = 30;
  ShuffleMode shuffle = ShuffleMode::per_epoch;
  int batch_max_outer_iters = 100;
  double batch_outer_tol = 1e-7;
  double batch_inner_tol = 1e-8;
  int batch_inner_max_iters = 500;
  int pairwise_epochs = 200;
  double pairwise_step0 = 0.5;
  bool scale = true;  // fit [-1,1] scaling on the training data
  int repeats = 25;
  double fraction = 0.8;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

// Trains one model on ds (already scaled if requested upstream).
std::pair<LinearModel, TrainReport> train_with(const Dataset& ds, const RunConfig& cfg,
                                               std::uint64_t seed);

// Mean +- std of the test AUC over `repeats` models, each trained on a random
// `fraction` subset of the training data (seeded per repeat). AUC uses the
// half tie policy; tie_flag records whether any ties were seen.
struct EvalReport {
  double auc = 0;
  double auc_std = 0;
  double loss_final = 0;          // mean final training objective
  double wall_time_per_pass = 0;  // seconds, mean over repeats and passes
  bool tie_flag = false;
  int repeats = 0;
  std::string config_echo;  // resolved RunConfig as JSON

  std::string to_json() const;
};

EvalReport run_eval(const Dataset& train, const Dataset& test, const RunConfig& cfg);

struct GridSpec {
  std::vector<double> betas;
  std::vector<double> gammas;
  std::vector<double> eta0s;  // ignored for the batch and pairwise algorithms
};

struct GridPoint {
  double beta = 0;
  double gamma = 0;
  double eta0 = 0;
  double val_auc = 0;
  bool best = false;
};

struct GridResult {
  GridPoint best;
  std::vector<GridPoint> rows;
};

// Inner train/validation split (default 80/20, seeded) and exhaustive search;
// the config maximizing validation AUC wins, ties broken by smaller gamma,
// then beta, then eta0.
GridResult run_grid(const Dataset& train, const RunConfig& base, const GridSpec& grid,
                    double val_fraction = 0.2);

std::string grid_to_csv(const GridResult& grid);
std::string grid_best_to_json(const GridResult& grid, const RunConfig& base);

// One benchmark measurement of the online solver in stream order: per-pass
// wall time and the high-water mark of the solver state's auxiliary storage.
struct BenchRow {
  std::string dataset;
  long n = 0;
  int d = 0;
  double time_per_pass = 0;  // seconds
  std::size_t peak_aux_bytes = 0;
};

BenchRow bench_synthetic(long n, int d, double density, const RunConfig& cfg);
BenchRow bench_dataset(const std::string& path, const RunConfig& cfg);
std::string bench_to_csv(const std::vector<BenchRow>& rows);

// Least-squares slope of log(time) against log(d); the per-step cost claim
// says it should be about 1.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string train_report_to_json(const TrainReport& report, const RunConfig& cfg);

// Number of worker threads for parallel repeats: UBAUC_THREADS when set, else
// hardware concurrency, never more than `jobs`.
int eval_threads(int jobs);

// Permutation split into (first, second) parts with both classes on each side
// when the labels are binary (bounded retries).
std::pair<Dataset, Dataset> split_train_val(const Dataset& ds, double first_fraction,
                                            std::uint64_t seed);

}  // namespace ubauc
