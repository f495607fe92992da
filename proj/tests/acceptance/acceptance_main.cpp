// Acceptance suite. Runs every criterion (or one, with --criterion N) and
// prints a single [PASS]/[FAIL] line per criterion. Exit code is the number
// of failed criteria.
//
// Criterion 8 needs the four public benchmark files (see data/benchmarks/ in
// the repo root, overridable via UBAUC_DATA_DIR); when the files are absent
// it fails with a message naming the expected paths.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "ubauc/ubauc.hpp"

using namespace ubauc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& msg) {
    if (!ok && pass) {
      pass = false;
      detail = msg;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point tic) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
}

// ---- criterion 1: golden ranking vector -------------------------------

Outcome criterion1() {
  Outcome out;
  const auto samples = oracle::fig1_samples();
  const double expected = 2.0 / 7.0;

  // warmup, then time one evaluation of each form
  (void)auc_risk_pairwise(samples, TiePolicy::strict);
  (void)auc_risk_rank(samples);
  double best = 1e9;
  for (int rep = 0; rep < 5; ++rep) {
    const auto tic = std::chrono::steady_clock::now();
    const double by_pairs = auc_risk_pairwise(samples, TiePolicy::strict);
    const double by_rank = auc_risk_rank(samples);
    best = std::min(best, seconds_since(tic));
    out.require(std::abs(by_pairs - expected) <= 1e-15,
                "pairwise risk " + std::to_string(by_pairs) + " != 2/7");
    out.require(std::abs(by_rank - expected) <= 1e-15,
                "rank risk " + std::to_string(by_rank) + " != 2/7");
    out.require(std::abs(by_pairs - by_rank) <= 1e-15, "forms disagree");
  }
  out.require(best < 1e-3, "evaluation took " + std::to_string(best * 1e3) + " ms (>= 1 ms)");

  const RankProfile rp = rank_profile(samples);
  out.require(rp.pos_ranks == std::vector<long>{4, 6, 7, 8, 9, 11, 13}, "wrong positive ranks");
  return out;
}

// ---- criterion 2: form equivalence ------------------------------------

Outcome criterion2() {
  Outcome out;
  std::mt19937_64 rng(2024);
  const auto tic = std::chrono::steady_clock::now();
  for (int rep = 0; rep < 1000; ++rep) {
    const auto s = oracle::random_tiefree_samples(rng, 500);
    const double eq1 = auc_risk_pairwise(s, TiePolicy::strict);
    const double eq2 = auc_risk_rank(s);
    out.require(std::abs(eq1 - eq2) <= 1e-12,
                "risk forms differ by " + std::to_string(std::abs(eq1 - eq2)));
    const double eq3 = surrogate_sorted(s).value;
    const double eq6 = surrogate_variational(s).value;
    out.require(std::abs(eq3 - eq6) <= 1e-10,
                "surrogate forms differ by " + std::to_string(std::abs(eq3 - eq6)));
  }
  const double sec = seconds_since(tic);
  out.require(sec < 10.0, "suite took " + std::to_string(sec) + " s (>= 10 s)");
  return out;
}

// ---- criterion 3: sum-of-top-k identity --------------------------------

Outcome criterion3() {
  Outcome out;
  std::mt19937_64 rng(3033);
  const auto tic = std::chrono::steady_clock::now();
  for (int rep = 0; rep < 1000; ++rep) {
    long n = 0;
    std::vector<double> z;
    do {
      n = 1 + static_cast<long>(detail::bounded(rng, 200));
      z.assign(static_cast<std::size_t>(n), 0.0);
      for (auto& v : z) v = 50.0 * (detail::uniform01(rng) - 0.5);
    } while (!oracle::all_distinct(z));
    const long k = 1 + static_cast<long>(detail::bounded(rng, static_cast<std::uint64_t>(n)));

    const double direct = topk_sum_direct(z, k);
    const TopKResult r = topk_sum_variational(z, k);
    out.require(std::abs(r.sum - direct) <= 1e-12 * std::max(1.0, std::abs(direct)),
                "variational value off by " + std::to_string(r.sum - direct));

    std::vector<double> sorted = z;
    std::sort(sorted.begin(), sorted.end());
    if (k < n) {
      const double lo = sorted[static_cast<std::size_t>(n - k - 1)];
      const double hi = sorted[static_cast<std::size_t>(n - k)];
      out.require(r.lambda_star >= lo && r.lambda_star < hi, "lambda* outside [z_(N-k), z_(N-k+1))");
    } else {
      out.require(r.lambda_star < sorted.front(), "lambda* not below min for k = N");
    }
  }
  const double sec = seconds_since(tic);
  out.require(sec < 5.0, "suite took " + std::to_string(sec) + " s (>= 5 s)");
  return out;
}

// ---- criterion 4: two-sided bound --------------------------------------

Outcome criterion4() {
  Outcome out;
  std::mt19937_64 rng(4044);
  const auto tic = std::chrono::steady_clock::now();
  for (int rep = 0; rep < 1000; ++rep) {
    const auto s = oracle::random_tiefree_samples(rng, 200);
    const double risk = auc_risk_pairwise(s, TiePolicy::strict);
    const double sur = surrogate_sorted(s).value;
    const BoundConstants bc = bound_constants(s);
    out.require(bc.alpha_upper * sur >= risk - 1e-9, "upper bound violated");
    out.require(risk >= bc.alpha_lower * sur - 1e-9, "lower bound violated");
  }
  // equality case: equally spaced scores
  for (int rep = 0; rep < 50; ++rep) {
    const long n = 3 + static_cast<long>(detail::bounded(rng, 80));
    std::vector<ScoredSample> s;
    long np = 0;
    for (long i = 0; i < n; ++i) {
      const int label = detail::uniform01(rng) < 0.5 ? 1 : -1;
      np += label == 1;
      s.push_back({0.5 * static_cast<double>(i), label});
    }
    if (np == 0 || np == n) continue;
    const BoundConstants bc = bound_constants(s);
    const double risk = auc_risk_pairwise(s, TiePolicy::strict);
    const double sur = surrogate_sorted(s).value;
    out.require(std::abs(bc.alpha_upper - bc.alpha_lower) <= 1e-9 * bc.alpha_upper,
                "constants differ on equally spaced scores");
    out.require(std::abs(bc.alpha_upper * sur - risk) <= 1e-9 * std::max(1.0, risk),
                "bound not tight on equally spaced scores");
  }
  const double sec = seconds_since(tic);
  out.require(sec < 5.0, "suite took " + std::to_string(sec) + " s (>= 5 s)");
  return out;
}

// ---- criterion 5: SVM objective dominates the surrogate -----------------

Outcome criterion5() {
  Outcome out;
  std::mt19937_64 rng(5055);
  const auto tic = std::chrono::steady_clock::now();
  for (int rep = 0; rep < 1000; ++rep) {
    const long n = 4 + static_cast<long>(detail::bounded(rng, 37));
    const int d = 2 + static_cast<int>(detail::bounded(rng, 5));
    const Dataset ds = oracle::random_dataset(rng, n, d, 0.6);
    const LinearModel m = oracle::random_model(rng, d);

    const double svm = svm_objective(m, ds);
    const double tight = surrogate_variational(score_dataset(m, ds)).value *
                         static_cast<double>(ds.n_pos) * static_cast<double>(ds.n_neg);
    out.require(svm >= tight - 1e-9,
                "svm objective " + std::to_string(svm) + " below N+N- L~ " + std::to_string(tight));
  }
  const double sec = seconds_since(tic);
  out.require(sec < 10.0, "suite took " + std::to_string(sec) + " s (>= 10 s)");
  return out;
}

// ---- criterion 6: joint convexity --------------------------------------

Outcome criterion6() {
  Outcome out;
  std::mt19937_64 rng(6066);
  for (int rep = 0; rep < 1000; ++rep) {
    const int d = 2 + static_cast<int>(detail::bounded(rng, 5));
    const Dataset ds = oracle::random_dataset(rng, 15, d, 0.7);
    const Objective obj{0.1 + 2.0 * detail::uniform01(rng), 0.5 * detail::uniform01(rng)};
    const LinearModel a = oracle::random_model(rng, d);
    const LinearModel b = oracle::random_model(rng, d);
    const double alpha = detail::uniform01(rng);

    LinearModel mix;
    mix.weights.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      mix.weights[static_cast<std::size_t>(j)] =
          alpha * a.weights[static_cast<std::size_t>(j)] +
          (1 - alpha) * b.weights[static_cast<std::size_t>(j)];
    }
    mix.threshold = alpha * *a.threshold + (1 - alpha) * *b.threshold;
    const double lhs = objective_value(mix, ds, obj);
    const double rhs = alpha * objective_value(a, ds, obj) +
                       (1 - alpha) * objective_value(b, ds, obj);
    out.require(lhs <= rhs + 1e-9, "Jensen violated by " + std::to_string(lhs - rhs));
  }
  return out;
}

// ---- criterion 7: solver correctness at desk scale ----------------------

Outcome criterion7() {
  Outcome out;
  const auto tic = std::chrono::steady_clock::now();
  const Dataset train = make_gaussian_2class(500, 2, 6.0, 0.5, 7001);
  const Dataset test = make_gaussian_2class(500, 2, 6.0, 0.5, 7002);

  BatchConfig bcfg;
  bcfg.objective = {1.0, 1e-3};
  bcfg.max_outer_iters = 40;
  auto [bmodel, breport] = train_batch(train, bcfg);
  const double brisk = auc_risk_pairwise(score_dataset(bmodel, test), TiePolicy::half);
  out.require(brisk <= 0.02, "batch test risk " + std::to_string(brisk) + " > 0.02");
  for (std::size_t i = 1; i < breport.objective.size(); ++i) {
    out.require(breport.objective[i] <= breport.objective[i - 1] +
                                            1e-9 * std::max(1.0, std::abs(breport.objective[i - 1])),
                "batch objective increased at pass " + std::to_string(i));
  }

  OnlineConfig ocfg;
  ocfg.objective = {1.0, 1e-4};
  ocfg.eta0 = 0.5;
  ocfg.epochs = 20;
  ocfg.seed = 7;
  auto [omodel, oreport] = train_online(train, ocfg);
  (void)oreport;
  const double orisk = auc_risk_pairwise(score_dataset(omodel, test), TiePolicy::half);
  out.require(orisk <= 0.02, "online test risk " + std::to_string(orisk) + " > 0.02");

  const double sec = seconds_since(tic);
  out.require(sec < 30.0, "suite took " + std::to_string(sec) + " s (>= 30 s)");
  if (out.pass) {
    std::ostringstream d;
    d << "batch risk " << brisk << ", online risk " << orisk;
    out.detail = d.str();
  }
  return out;
}

// ---- criterion 8: benchmark reproduction --------------------------------

std::string data_dir() {
  if (const char* env = std::getenv("UBAUC_DATA_DIR")) return env;
  return "data/benchmarks";
}

std::optional<std::string> find_file(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    const std::string p = data_dir() + "/" + n;
    if (std::filesystem::exists(p)) return p;
  }
  return std::nullopt;
}

struct BenchTarget {
  std::string name;
  std::vector<std::string> train_names;
  std::vector<std::string> test_names;  // empty: split the train file in half
  double online_target = 0;
  double batch_target = 0;  // 0: not gated
};

Outcome criterion8() {
  Outcome out;
  const auto tic = std::chrono::steady_clock::now();

  const std::vector<BenchTarget> targets = {
      {"diabetes", {"diabetes", "diabetes.libsvm", "diabetes.txt", "diabetes_scale"}, {}, 0.8326, 0},
      {"fourclass", {"fourclass", "fourclass.libsvm", "fourclass.txt", "fourclass_scale"}, {}, 0.8301, 0},
      {"german", {"german.numer", "german", "german.libsvm", "german.numer_scale"}, {}, 0.7928, 0},
      {"splice",
       {"splice", "splice.libsvm", "splice.txt"},
       {"splice.t", "splice.t.libsvm", "splice.test"},
       0.9231,
       0.9269},
  };

  for (const auto& target : targets) {
    const auto train_path = find_file(target.train_names);
    if (!train_path) {
      out.require(false, "dataset '" + target.name + "' not found under " + data_dir() +
                             " (tried " + target.train_names.front() +
                             " and variants); supply the public LIBSVM file to run this row");
      continue;
    }
    Dataset full = load_libsvm(*train_path);
    if (!full.labels_binary()) full = binarize_by_class_partition(full, 13);

    Dataset train, test;
    if (!target.test_names.empty()) {
      const auto test_path = find_file(target.test_names);
      if (!test_path) {
        out.require(false, "test file for '" + target.name + "' not found under " + data_dir());
        continue;
      }
      train = std::move(full);
      test = load_libsvm(*test_path);
      if (!test.labels_binary()) test = binarize_by_class_partition(test, 13);
    } else {
      auto split = split_train_val(full, 0.5, 13);
      train = std::move(split.first);
      test = std::move(split.second);
    }

    for (int pass = 0; pass < 2; ++pass) {
      const bool online = pass == 0;
      const double reference = online ? target.online_target : target.batch_target;
      if (reference == 0) continue;

      RunConfig base;
      base.algo = online ? Algo::online : Algo::batch;
      base.objective = {1.0, 1e-4};
      base.epochs = 30;
      base.batch_max_outer_iters = 40;
      base.batch_inner_max_iters = 300;
      base.repeats = 25;
      base.fraction = 0.8;
      base.seed = 1;

      GridSpec grid;
      grid.betas = {0.1, 1.0, 10.0};
      grid.gammas = {1e-4, 1e-2, 1.0};
      grid.eta0s = {0.01, 0.1, 1.0};
      const GridResult gres = run_grid(train, base, grid);

      RunConfig cfg = base;
      cfg.objective.beta = gres.best.beta;
      cfg.objective.gamma = gres.best.gamma;
      if (online) cfg.eta0 = gres.best.eta0;

      const EvalReport rep = run_eval(train, test, cfg);
      std::ostringstream msg;
      msg << target.name << "/" << to_string(cfg.algo) << ": auc " << rep.auc << " +- "
          << rep.auc_std << " vs reference " << reference;
      std::cout << "       " << msg.str() << "\n";
      out.require(std::abs(rep.auc - reference) <= 0.03, msg.str() + " (|diff| > 0.03)");
    }
  }
  const double sec = seconds_since(tic);
  out.require(sec < 900.0, "suite took " + std::to_string(sec) + " s (>= 15 min)");
  return out;
}

// ---- criterion 9: complexity scaling ------------------------------------

Outcome criterion9() {
  Outcome out;
  RunConfig cfg;
  cfg.objective = {1.0, 1e-3};
  cfg.eta0 = 0.2;
  cfg.epochs = 5;

  // per-pass time should scale about linearly with dimension (dense input)
  const std::vector<double> dims = {100, 1000, 10000};
  std::vector<double> times;
  for (double d : dims) {
    const BenchRow row = bench_synthetic(2000, static_cast<int>(d), 1.0, cfg);
    times.push_back(row.time_per_pass);
  }
  const double slope = loglog_slope(dims, times);
  {
    std::ostringstream d;
    d << "slope " << slope << "; times";
    for (double t : times) d << " " << t;
    std::cout << "       " << d.str() << "\n";
  }
  out.require(slope >= 0.8 && slope <= 1.2,
              "log-log slope " + std::to_string(slope) + " outside [0.8, 1.2]");

  // peak auxiliary memory flat in the number of streamed examples
  const BenchRow small = bench_synthetic(1000, 50, 0.5, cfg);
  const BenchRow large = bench_synthetic(100000, 50, 0.5, cfg);
  const double ratio = static_cast<double>(large.peak_aux_bytes) /
                       static_cast<double>(small.peak_aux_bytes);
  out.require(ratio >= 0.9 && ratio <= 1.1,
              "peak aux bytes ratio " + std::to_string(ratio) + " outside +-10%");
  return out;
}

// ---- criterion 10: population checks ------------------------------------

Outcome criterion10() {
  Outcome out;
  const auto tic = std::chrono::steady_clock::now();
  const long n = 100000;

  int idx = 0;
  for (double p : {0.2, 0.5, 0.8}) {
    for (int family = 0; family < 3; ++family) {
      const ScoreDistributionPair d =
          family == 0   ? gaussian_score_pair(1.0, 0.0, 1.0, p)
          : family == 1 ? uniform_score_pair(0.0, 2.0, -0.5, 1.0, p)
                        : logistic_score_pair(0.5, -0.5, 0.6, p);
      ++idx;
      const QuantileIdentityReport l5 = verify_quantile_identity(d, n, 100 + static_cast<std::uint64_t>(idx));
      out.require(l5.holds, d.name + " p=" + std::to_string(p) + ": quantile identity |" +
                                std::to_string(l5.lhs) + " - " + std::to_string(l5.rhs) +
                                "| > 3 sigma");
      const PopulationBoundReport pb =
          verify_population_bound(d, n, 200 + static_cast<std::uint64_t>(idx));
      out.require(pb.holds, d.name + " p=" + std::to_string(p) + ": bound " +
                                std::to_string(pb.lhs) + " > " + std::to_string(pb.rhs));
    }
  }

  const auto uni = uniform_score_pair(0.0, 1.0, 0.0, 1.0, 0.5);
  const QuantileIdentityReport l5 = verify_quantile_identity(uni, n, 999);
  out.require(std::abs(l5.lhs - 0.75) <= 5e-3,
              "uniform analytic case lhs " + std::to_string(l5.lhs) + " != 0.75");
  out.require(std::abs(l5.rhs - 0.75) <= 5e-3,
              "uniform analytic case rhs " + std::to_string(l5.rhs) + " != 0.75");

  const double sec = seconds_since(tic);
  out.require(sec < 60.0, "suite took " + std::to_string(sec) + " s (>= 60 s)");
  return out;
}

// ---- criterion 11: online step is a subgradient --------------------------

Outcome criterion11() {
  Outcome out;
  std::mt19937_64 rng(1111);
  const int d = 6;

  auto per_example = [](const std::vector<double>& w, double lambda, const Example& ex,
                        const Objective& obj) {
    double s = 0;
    for (const auto& e : ex.features.entries) {
      s += w[static_cast<std::size_t>(e.index)] * e.value;
    }
    double norm2 = 0;
    for (double x : w) norm2 += x * x;
    const double y = ex.label;
    const double r = 1.0 - y * s;
    return 0.5 * obj.gamma * norm2 + std::max(0.0, y * (lambda - s)) + 0.5 * obj.beta * r * r;
  };

  int tested = 0;
  while (tested < 200) {
    OnlineConfig cfg;
    cfg.objective = {0.25 + 2.0 * detail::uniform01(rng), detail::uniform01(rng)};
    cfg.eta0 = 0.05 + 0.2 * detail::uniform01(rng);

    LinearModel init = oracle::random_model(rng, d);
    Example ex;
    ex.label = detail::uniform01(rng) < 0.5 ? 1 : -1;
    ex.features.dim = d;
    for (int j = 0; j < d; ++j) {
      if (detail::uniform01(rng) < 0.7) {
        const double v = 2.0 * detail::uniform01(rng) - 1.0;
        if (v != 0.0) ex.features.entries.push_back({j, v});
      }
    }
    if (ex.features.entries.empty()) continue;

    OnlineState state(init);
    const double s = state.score(ex.features);
    if (std::abs(ex.label * (state.threshold() - s)) <= 1e-3) continue;  // kink guard
    ++tested;

    const std::vector<double> w0 = init.weights;
    const double l0 = *init.threshold;
    sgd_step(state, ex, cfg);
    const LinearModel after = state.snapshot();
    const double eta = cfg.eta0;  // t = 1

    for (int j = 0; j < d; ++j) {
      const double dir =
          (w0[static_cast<std::size_t>(j)] - after.weights[static_cast<std::size_t>(j)]) / eta;
      const double h = 1e-7 * (1.0 + std::abs(w0[static_cast<std::size_t>(j)]));
      auto wp = w0, wm = w0;
      wp[static_cast<std::size_t>(j)] += h;
      wm[static_cast<std::size_t>(j)] -= h;
      const double fd =
          (per_example(wp, l0, ex, cfg.objective) - per_example(wm, l0, ex, cfg.objective)) /
          (2 * h);
      out.require(std::abs(dir - fd) <= 1e-5 * (1.0 + std::abs(fd)),
                  "w-direction mismatch " + std::to_string(dir) + " vs " + std::to_string(fd));
    }
    const double dl = (l0 - *after.threshold) / eta;
    const double h = 1e-7;
    const double fd =
        (per_example(w0, l0 + h, ex, cfg.objective) - per_example(w0, l0 - h, ex, cfg.objective)) /
        (2 * h);
    out.require(std::abs(dl - fd) <= 1e-5 * (1.0 + std::abs(fd)),
                "lambda-direction mismatch " + std::to_string(dl) + " vs " + std::to_string(fd));
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      ++i;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "golden ranking vector (2/7, < 1 ms)", criterion1},
      {2, "form equivalence, 1000 fuzzed instances", criterion2},
      {3, "sum-of-top-k identity, 1000 fuzzed instances", criterion3},
      {4, "two-sided bound sandwich, 1000 fuzzed instances", criterion4},
      {5, "SVM objective dominates the surrogate", criterion5},
      {6, "joint convexity of the training objective", criterion6},
      {7, "solver correctness on synthetic gaussians", criterion7},
      {8, "benchmark AUC reproduction (25-repeat 80% protocol)", criterion8},
      {9, "complexity scaling of the online solver", criterion9},
      {10, "population-form identities at 3-sigma slack", criterion10},
      {11, "online step matches finite differences", criterion11},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto tic = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double sec = seconds_since(tic);
    std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
              << " (" << sec << " s)";
    if (!out.detail.empty()) std::cout << " -- " << out.detail;
    std::cout << "\n";
    failures += !out.pass;
  }
  return failures;
}
