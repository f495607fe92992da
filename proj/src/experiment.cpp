#include "ubauc/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ubauc/baselines.hpp"
#include "ubauc/detail/rng.hpp"
#include "ubauc/errors.hpp"
#include "ubauc/synthetic.hpp"

namespace ubauc {

Algo algo_from_string(const std::string& name) {
  if (name == "online") return Algo::online;
  if (name == "batch") return Algo::batch;
  if (name == "pairwise-hinge") return Algo::pairwise_hinge;
  throw ValidationError("unknown algo '" + name + "' (expected online, batch, pairwise-hinge)");
}

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::online: return "online";
    case Algo::batch: return "batch";
    case Algo::pairwise_hinge: return "pairwise-hinge";
  }
  return "?";
}

namespace {

std::string shuffle_name(ShuffleMode m) {
  switch (m) {
    case ShuffleMode::per_epoch: return "per_epoch";
    case ShuffleMode::none: return "none";
    case ShuffleMode::with_replacement: return "with_replacement";
  }
  return "?";
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["algo"] = to_string(cfg.algo);
  j["beta"] = cfg.objective.beta;
  j["gamma"] = cfg.objective.gamma;
  j["eta0"] = cfg.eta0;
  j["epochs"] = cfg.epochs;
  j["shuffle"] = shuffle_name(cfg.shuffle);
  j["batch_max_outer_iters"] = cfg.batch_max_outer_iters;
  j["batch_outer_tol"] = cfg.batch_outer_tol;
  j["batch_inner_tol"] = cfg.batch_inner_tol;
  j["batch_inner_max_iters"] = cfg.batch_inner_max_iters;
  j["pairwise_epochs"] = cfg.pairwise_epochs;
  j["pairwise_step0"] = cfg.pairwise_step0;
  j["scale"] = cfg.scale;
  j["repeats"] = cfg.repeats;
  j["fraction"] = cfg.fraction;
  j["seed"] = cfg.seed;
  return j;
}

// Runs f(0..n-1) on up to `threads` striped workers; the first exception (by
// index) is rethrown after all workers join, so results stay deterministic.
template <typename F>
void parallel_for(int n, int threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> workers;
  const int k = std::min(threads, n);
  workers.reserve(static_cast<std::size_t>(k));
  for (int w = 0; w < k; ++w) {
    workers.emplace_back([&, w] {
      for (int i = w; i < n; i += k) {
        try {
          f(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Dataset with_dim(const Dataset& ds, int dim) {
  Dataset out = ds;
  out.dim = std::max(out.dim, dim);
  for (auto& ex : out.examples) ex.features.dim = out.dim;
  return out;
}

double mean_pass_seconds(const TrainReport& r) {
  // The batch report carries a leading placeholder entry for the initial state.
  const std::size_t n = static_cast<std::size_t>(r.passes);
  if (n == 0 || r.pass_seconds.empty()) return 0.0;
  const std::size_t start = r.pass_seconds.size() - n;
  double s = 0.0;
  for (std::size_t i = start; i < r.pass_seconds.size(); ++i) s += r.pass_seconds[i];
  return s / static_cast<double>(n);
}

}  // namespace

std::string RunConfig::to_json() const { return config_json(*this).dump(); }

std::pair<LinearModel, TrainReport> train_with(const Dataset& ds, const RunConfig& cfg,
                                               std::uint64_t seed) {
  switch (cfg.algo) {
    case Algo::online: {
      OnlineConfig ocfg;
      ocfg.objective = cfg.objective;
      ocfg.eta0 = cfg.eta0;
      ocfg.epochs = cfg.epochs;
      ocfg.seed = seed;
      ocfg.shuffle = cfg.shuffle;
      return train_online(ds, ocfg);
    }
    case Algo::batch: {
      BatchConfig bcfg;
      bcfg.objective = cfg.objective;
      bcfg.max_outer_iters = cfg.batch_max_outer_iters;
      bcfg.outer_tol = cfg.batch_outer_tol;
      bcfg.inner_tol = cfg.batch_inner_tol;
      bcfg.inner_max_iters = cfg.batch_inner_max_iters;
      return train_batch(ds, bcfg);
    }
    case Algo::pairwise_hinge: {
      TrainReport report;
      LinearModel model = train_pairwise_hinge_batch(ds, cfg.objective.gamma,
                                                     cfg.pairwise_epochs, cfg.pairwise_step0,
                                                     seed, &report);
      return {std::move(model), std::move(report)};
    }
  }
  throw ValidationError("unknown algo");
}

EvalReport run_eval(const Dataset& train, const Dataset& test, const RunConfig& cfg) {
  if (cfg.repeats < 1) throw ValidationError("repeats must be >= 1");
  const int full_dim = std::max(train.dim, test.dim);
  const Dataset train2 = with_dim(train, full_dim);
  const Dataset test2 = with_dim(test, full_dim);

  struct Repeat {
    double auc = 0, loss = 0, tpp = 0;
    bool ties = false;
  };
  std::vector<Repeat> results(static_cast<std::size_t>(cfg.repeats));

  parallel_for(cfg.repeats, eval_threads(cfg.repeats), [&](int r) {
    Dataset sub = subsample_split(train2, cfg.fraction, cfg.seed + 1 + static_cast<std::uint64_t>(r));
    Dataset sub_test = test2;
    if (cfg.scale) {
      auto [scaled, params] = standardize(sub);
      sub = std::move(scaled);
      sub_test = apply_scaling(test2, params);
    }
    auto [model, report] = train_with(sub, cfg, cfg.seed + static_cast<std::uint64_t>(r));
    const auto scored = score_dataset(model, sub_test);
    Repeat& out = results[static_cast<std::size_t>(r)];
    out.auc = 1.0 - detail::wmw_risk(scored, TiePolicy::half);
    out.ties = has_ties(scored);  // ties in the reported AUC computation
    out.loss = report.final_objective();
    out.tpp = mean_pass_seconds(report);
  });

  EvalReport rep;
  rep.repeats = cfg.repeats;
  rep.config_echo = cfg.to_json();
  double mean = 0;
  for (const auto& r : results) {
    mean += r.auc;
    rep.loss_final += r.loss;
    rep.wall_time_per_pass += r.tpp;
    rep.tie_flag = rep.tie_flag || r.ties;
  }
  mean /= cfg.repeats;
  rep.loss_final /= cfg.repeats;
  rep.wall_time_per_pass /= cfg.repeats;
  rep.auc = mean;
  if (cfg.repeats > 1) {
    double ss = 0;
    for (const auto& r : results) ss += (r.auc - mean) * (r.auc - mean);
    rep.auc_std = std::sqrt(ss / (cfg.repeats - 1));
  }
  return rep;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["auc"] = auc;
  j["auc_std"] = auc_std;
  j["loss_final"] = loss_final;
  j["wall_time_per_pass"] = wall_time_per_pass;
  j["tie_flag"] = tie_flag;
  j["repeats"] = repeats;
  j["config"] = nlohmann::ordered_json::parse(config_echo);
  return j.dump();
}

std::pair<Dataset, Dataset> split_train_val(const Dataset& ds, double first_fraction,
                                            std::uint64_t seed) {
  if (!(first_fraction > 0.0) || !(first_fraction < 1.0)) {
    throw ValidationError("split fraction must be in (0, 1)");
  }
  const long n = static_cast<long>(ds.size());
  const long m = std::llround(first_fraction * static_cast<double>(n));
  if (m < 1 || m >= n) throw ValidationError("split leaves an empty side");

  std::mt19937_64 rng(seed);
  const bool need_both = ds.labels_binary();
  for (int attempt = 0; attempt < 32; ++attempt) {
    const auto idx = detail::permutation(n, rng);
    Dataset first, second;
    first.dim = second.dim = ds.dim;
    long fp = 0, fn = 0, sp = 0, sn = 0;
    for (long i = 0; i < n; ++i) {
      const auto& ex = ds.examples[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      if (i < m) {
        fp += ex.label == 1;
        fn += ex.label == -1;
        first.examples.push_back(ex);
      } else {
        sp += ex.label == 1;
        sn += ex.label == -1;
        second.examples.push_back(ex);
      }
    }
    if (!need_both || (fp >= 1 && fn >= 1 && sp >= 1 && sn >= 1)) {
      first.n_pos = fp;
      first.n_neg = fn;
      second.n_pos = sp;
      second.n_neg = sn;
      return {std::move(first), std::move(second)};
    }
  }
  throw ValidationError("could not split with both classes on each side within 32 attempts");
}

GridResult run_grid(const Dataset& train, const RunConfig& base, const GridSpec& grid,
                    double val_fraction) {
  if (grid.betas.empty() || grid.gammas.empty() ||
      (base.algo == Algo::online && grid.eta0s.empty())) {
    throw ValidationError("empty grid");
  }
  auto [inner_train, inner_val] = split_train_val(train, 1.0 - val_fraction, base.seed + 77);
  Dataset fit = inner_train;
  Dataset val = inner_val;
  if (base.scale) {
    auto [scaled, params] = standardize(inner_train);
    fit = std::move(scaled);
    val = apply_scaling(inner_val, params);
  }
  const int full_dim = std::max(fit.dim, val.dim);
  fit = with_dim(fit, full_dim);
  val = with_dim(val, full_dim);

  // eta0 only matters for the online algorithm; other algos get one row per
  // (beta, gamma) with eta0 recorded as 0.
  const std::vector<double> etas =
      base.algo == Algo::online ? grid.eta0s : std::vector<double>{0.0};

  GridResult result;
  for (double beta : grid.betas) {
    for (double gamma : grid.gammas) {
      for (double eta : etas) {
        result.rows.push_back({beta, gamma, eta, 0.0, false});
      }
    }
  }

  parallel_for(static_cast<int>(result.rows.size()),
               eval_threads(static_cast<int>(result.rows.size())), [&](int i) {
                 GridPoint& pt = result.rows[static_cast<std::size_t>(i)];
                 RunConfig cfg = base;
                 cfg.objective.beta = pt.beta;
                 cfg.objective.gamma = pt.gamma;
                 if (base.algo == Algo::online) cfg.eta0 = pt.eta0;
                 try {
                   auto [model, report] = train_with(fit, cfg, base.seed);
                   const auto scored = score_dataset(model, val);
                   pt.val_auc = 1.0 - detail::wmw_risk(scored, TiePolicy::half);
                 } catch (const DivergenceError&) {
                   pt.val_auc = 0.0;  // diverged configs lose the grid search
                 }
               });

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const auto& a = result.rows[i];
    const auto& b = result.rows[best];
    const auto key = [](const GridPoint& p) {
      return std::make_tuple(-p.val_auc, p.gamma, p.beta, p.eta0);
    };
    if (key(a) < key(b)) best = i;
  }
  result.rows[best].best = true;
  result.best = result.rows[best];
  return result;
}

std::string grid_to_csv(const GridResult& grid) {
  std::ostringstream out;
  out << "beta,gamma,eta0,val_auc,best\n";
  for (const auto& r : grid.rows) {
    out << r.beta << ',' << r.gamma << ',' << r.eta0 << ',' << r.val_auc << ','
        << (r.best ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string grid_best_to_json(const GridResult& grid, const RunConfig& base) {
  RunConfig cfg = base;
  cfg.objective.beta = grid.best.beta;
  cfg.objective.gamma = grid.best.gamma;
  if (base.algo == Algo::online) cfg.eta0 = grid.best.eta0;
  nlohmann::ordered_json j;
  j["val_auc"] = grid.best.val_auc;
  j["config"] = config_json(cfg);
  return j.dump();
}

namespace {

BenchRow bench_stream(const std::string& name, const std::vector<Example>& pool, long n, int d,
                      const RunConfig& cfg) {
  OnlineConfig ocfg;
  ocfg.objective = cfg.objective;
  ocfg.eta0 = cfg.eta0;
  ocfg.seed = cfg.seed;
  ocfg.shuffle = ShuffleMode::none;

  OnlineState state(d);
  std::size_t peak = state.aux_bytes();
  const int passes = std::max(3, cfg.epochs);
  std::vector<double> times;

  // warmup pass
  for (long i = 0; i < n; ++i) {
    sgd_step(state, pool[static_cast<std::size_t>(i) % pool.size()], ocfg);
  }
  peak = std::max(peak, state.aux_bytes());

  for (int p = 0; p < passes; ++p) {
    const auto tic = std::chrono::steady_clock::now();
    for (long i = 0; i < n; ++i) {
      sgd_step(state, pool[static_cast<std::size_t>(i) % pool.size()], ocfg);
    }
    times.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
    peak = std::max(peak, state.aux_bytes());
  }
  std::sort(times.begin(), times.end());
  return {name, n, d, times[times.size() / 2], peak};
}

}  // namespace

BenchRow bench_synthetic(long n, int d, double density, const RunConfig& cfg) {
  const long pool_size = std::min<long>(n, 64);
  const auto pool = make_sparse_pool(pool_size, d, density, cfg.seed + 99);
  std::ostringstream name;
  name << "synthetic-n" << n << "-d" << d;
  return bench_stream(name.str(), pool, n, d, cfg);
}

BenchRow bench_dataset(const std::string& path, const RunConfig& cfg) {
  Dataset ds = load_libsvm(path);
  if (!ds.labels_binary()) ds = binarize_by_class_partition(ds, cfg.seed);
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return bench_stream(name, ds.examples, static_cast<long>(ds.size()), ds.dim, cfg);
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "dataset,n,d,time_per_pass,peak_aux_bytes\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.n << ',' << r.d << ',' << r.time_per_pass << ','
        << r.peak_aux_bytes << '\n';
  }
  return out.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("need >= 2 points");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string train_report_to_json(const TrainReport& report, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["algo"] = report.algo;
  j["passes"] = report.passes;
  j["converged"] = report.converged;
  j["inner_cap_hit"] = report.inner_cap_hit;
  j["ties_seen"] = report.ties_seen;
  j["objective"] = report.objective;
  j["train_auc_risk"] = report.train_auc_risk;
  j["pass_seconds"] = report.pass_seconds;
  j["config"] = config_json(cfg);
  return j.dump();
}

int eval_threads(int jobs) {
  int threads = 0;
  if (const char* env = std::getenv("UBAUC_THREADS")) {
    threads = std::atoi(env);
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  return std::max(1, std::min(threads, jobs));
}

}  // namespace ubauc
