#include "ubauc/batch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ubauc/errors.hpp"
#include "ubauc/metrics.hpp"

namespace ubauc {

void BatchConfig::validate() const {
  objective.validate_for_training();
  if (max_outer_iters < 1 || inner_max_iters < 1) {
    throw ValidationError("iteration caps must be >= 1");
  }
  if (!(outer_tol > 0.0) || !(inner_tol > 0.0)) {
    throw ValidationError("tolerances must be > 0");
  }
}

namespace {

// Value of the w-block objective; fills the subgradient when g != nullptr.
double eval_subproblem(const Dataset& ds, double lambda, const Objective& obj,
                       const std::vector<double>& w, std::vector<double>* g) {
  if (g) {
    g->assign(w.size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) (*g)[j] = obj.gamma * w[j];
  }
  double norm2 = 0.0;
  for (double x : w) norm2 += x * x;
  double total = 0.5 * obj.gamma * norm2;

  for (const auto& ex : ds.examples) {
    const double s = ex.features.dot(w);
    const double y = ex.label;
    const double resid = 1.0 - y * s;
    total += 0.5 * obj.beta * resid * resid;
    const bool active = y * (lambda - s) > 0.0;
    if (active) total += y * (lambda - s);
    if (g) {
      double coef = obj.beta * (s - y);  // d/dw of the least-squares term
      if (active) coef -= y;             // hinge subgradient, 0 at the kink
      if (coef != 0.0) axpy(coef, ex.features, *g);
    }
  }
  return total;
}

double lambda_step(std::vector<double> scores, long n_neg) {
  // Exact minimizer of the lambda-block: any point of [z_(N-), z_(N-+1)];
  // take the midpoint (left endpoint if the interval is degenerate).
  const auto split = scores.begin() + static_cast<std::ptrdiff_t>(n_neg);
  std::nth_element(scores.begin(), split - 1, scores.end());
  const double lo = *(split - 1);
  const double hi = *std::min_element(split, scores.end());
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> w_subproblem(const Dataset& ds, double lambda, const Objective& obj,
                                 std::vector<double> w0, double tol, int max_iters,
                                 bool* cap_hit) {
  obj.validate_for_training();
  if (static_cast<int>(w0.size()) != ds.dim) {
    throw ValidationError("w0 length does not match dataset dim");
  }
  if (cap_hit) *cap_hit = false;

  double sum_sq = 0.0;
  for (const auto& ex : ds.examples) sum_sq += ex.features.squared_norm();

  std::vector<double> w = std::move(w0);
  std::vector<double> g, trial(w.size());
  std::vector<double> best_w = w;
  double best_f = std::numeric_limits<double>::infinity();

  // Conservative inverse-curvature guess; the line search grows it quickly.
  double eta = 1.0 / (1.0 + obj.gamma + obj.beta * sum_sq);
  int small_progress = 0;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    const double f = eval_subproblem(ds, lambda, obj, w, &g);
    if (!std::isfinite(f)) {
      throw DivergenceError("w-subproblem produced a non-finite objective",
                            LinearModel{best_w, lambda});
    }
    if (f < best_f) {
      best_f = f;
      best_w = w;
    }
    double gnorm2 = 0.0;
    for (double x : g) gnorm2 += x * x;
    if (gnorm2 <= 1e-24) break;

    double et = eta * 2.0;
    bool accepted = false;
    double ft = f;
    for (int h = 0; h < 60; ++h) {
      for (std::size_t j = 0; j < w.size(); ++j) trial[j] = w[j] - et * g[j];
      ft = eval_subproblem(ds, lambda, obj, trial, nullptr);
      if (ft <= f - 1e-4 * et * gnorm2) {
        accepted = true;
        break;
      }
      et *= 0.5;
    }
    if (!accepted) break;  // no descent along -g within machine steps: at a kink minimum

    w.swap(trial);
    eta = et;
    if (ft < best_f) {
      best_f = ft;
      best_w = w;
    }
    const double rel = (f - ft) / std::max(1.0, std::abs(ft));
    small_progress = rel < tol ? small_progress + 1 : 0;
    if (small_progress >= 3) break;
  }
  if (cap_hit && iter >= max_iters) *cap_hit = true;
  return best_w;
}

std::pair<LinearModel, TrainReport> train_batch(const Dataset& ds, const BatchConfig& cfg,
                                                const LinearModel* init) {
  cfg.validate();
  if (!ds.labels_binary() || ds.n_pos == 0 || ds.n_neg == 0) {
    throw ValidationError("batch training needs binary labels with both classes present");
  }

  LinearModel model;
  if (init) {
    if (init->dim() != ds.dim) throw ValidationError("init model dim does not match dataset");
    model = *init;
    if (!model.threshold) model.threshold = 0.0;
  } else {
    model.weights.assign(static_cast<std::size_t>(ds.dim), 0.0);
    model.threshold = 0.0;
  }

  TrainReport report;
  report.algo = "batch";

  auto record = [&](double obj_val) {
    const auto scored = score_dataset(model, ds);
    report.objective.push_back(obj_val);
    report.train_auc_risk.push_back(detail::wmw_risk(scored, TiePolicy::half));
    report.ties_seen = report.ties_seen || has_ties(scored);
  };

  double obj_val = objective_value(model, ds, cfg.objective);
  record(obj_val);
  report.pass_seconds.push_back(0.0);

  for (int it = 1; it <= cfg.max_outer_iters; ++it) {
    const auto tic = std::chrono::steady_clock::now();

    bool cap_hit = false;
    model.weights = w_subproblem(ds, *model.threshold, cfg.objective, std::move(model.weights),
                                 cfg.inner_tol, cfg.inner_max_iters, &cap_hit);
    report.inner_cap_hit = report.inner_cap_hit || cap_hit;

    std::vector<double> scores(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
      scores[i] = ds.examples[i].features.dot(model.weights);
    }
    model.threshold = lambda_step(std::move(scores), ds.n_neg);

    const double next_val = objective_value(model, ds, cfg.objective);
    if (!std::isfinite(next_val)) {
      throw DivergenceError("batch objective became non-finite at outer iteration " +
                                std::to_string(it),
                            model);
    }
    if (next_val > obj_val + 1e-9 * std::max(1.0, std::abs(obj_val))) {
      throw std::logic_error("block coordinate descent objective increased");
    }

    report.pass_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
    record(next_val);
    report.passes = it;

    const double rel = std::abs(obj_val - next_val) / std::max(1.0, std::abs(obj_val));
    obj_val = next_val;
    if (rel < cfg.outer_tol) {
      report.converged = true;
      break;
    }
  }
  return {std::move(model), std::move(report)};
}

}  // namespace ubauc
