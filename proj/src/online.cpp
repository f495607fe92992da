#include "ubauc/online.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "ubauc/detail/rng.hpp"
#include "ubauc/errors.hpp"
#include "ubauc/metrics.hpp"

namespace ubauc {

void OnlineConfig::validate() const {
  objective.validate_for_training();
  if (!(eta0 >= 0.0) || !std::isfinite(eta0)) {
    throw ValidationError("eta0 must be finite and >= 0 (0 is a no-op)");
  }
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
}

OnlineState::OnlineState(int dim, double lambda0)
    : v_(static_cast<std::size_t>(dim), 0.0), lambda_(lambda0) {
  if (dim < 1) throw ValidationError("model dim must be >= 1");
}

OnlineState::OnlineState(const LinearModel& init)
    : v_(init.weights), lambda_(init.threshold.value_or(0.0)) {
  if (v_.empty()) throw ValidationError("model dim must be >= 1");
}

double OnlineState::score(const SparseVector& x) const {
  return scale_ * x.dot(v_);
}

LinearModel OnlineState::snapshot() const {
  LinearModel m;
  m.weights.resize(v_.size());
  for (std::size_t j = 0; j < v_.size(); ++j) m.weights[j] = scale_ * v_[j];
  m.threshold = lambda_;
  return m;
}

std::size_t OnlineState::aux_bytes() const {
  return sizeof(OnlineState) + v_.capacity() * sizeof(double);
}

void OnlineState::densify() {
  for (double& x : v_) x *= scale_;
  scale_ = 1.0;
}

void sgd_step(OnlineState& state, const Example& ex, const OnlineConfig& cfg) {
  const SparseVector& x = ex.features;
  if (!x.entries.empty() && x.entries.back().index >= state.dim()) {
    throw ValidationError("example feature index exceeds model dim");
  }
  if (ex.label != 1 && ex.label != -1) throw ValidationError("labels must be -1 or +1");

  const double beta = cfg.objective.beta;
  const double gamma = cfg.objective.gamma;
  const double y = ex.label;
  const long long t = state.steps_ + 1;
  const double eta = cfg.eta0 / std::sqrt(static_cast<double>(t));

  const double s = state.score(x);
  const double lambda_old = state.lambda_;
  const bool active = y * (state.lambda_ - s) > 0.0;
  const double coef = beta * s - (beta + (active ? 1.0 : 0.0)) * y;  // weight on x
  const double new_lambda = state.lambda_ - eta * y * (active ? 1.0 : 0.0);

  const double decay = 1.0 - eta * gamma;
  double new_scale;
  if (std::abs(decay) < 1e-12) {
    // eta*gamma ~ 1 annihilates the old weights; apply the shrink densely so
    // the scale never collapses to (near) zero. Rare.
    state.densify();
    for (double& v : state.v_) v *= decay;
    new_scale = 1.0;
  } else {
    if (std::abs(state.scale_ * decay) < 1e-120 || std::abs(state.scale_ * decay) > 1e120) {
      state.densify();
    }
    new_scale = state.scale_ * decay;
  }
  const double q = eta * coef / new_scale;

  if (!std::isfinite(s) || !std::isfinite(q) || !std::isfinite(new_lambda)) {
    throw DivergenceError("online step " + std::to_string(t) + " is non-finite",
                          state.snapshot());
  }
  // Validate the touched coordinates before mutating anything, so the thrown
  // state is the last finite one.
  for (const auto& e : x.entries) {
    const double nv = state.v_[static_cast<std::size_t>(e.index)] - q * e.value;
    if (!std::isfinite(nv * new_scale)) {
      throw DivergenceError("online step " + std::to_string(t) + " overflowed",
                            state.snapshot());
    }
  }
  for (const auto& e : x.entries) {
    state.v_[static_cast<std::size_t>(e.index)] -= q * e.value;
  }
  state.scale_ = new_scale;
  state.lambda_ = new_lambda;
  state.steps_ = t;

  // Smoothed per-example loss (hinge + least squares), diagnostics only.
  const double resid = 1.0 - y * s;
  const double f_ex = (active ? y * (lambda_old - s) : 0.0) + 0.5 * beta * resid * resid;
  state.run_obj_ = t == 1 ? f_ex : 0.99 * state.run_obj_ + 0.01 * f_ex;
}

std::pair<LinearModel, TrainReport> train_online(const Dataset& ds, const OnlineConfig& cfg) {
  cfg.validate();
  if (!ds.labels_binary() || ds.n_pos == 0 || ds.n_neg == 0) {
    throw ValidationError("online training needs binary labels with both classes present");
  }

  OnlineState state(ds.dim);
  std::mt19937_64 rng(cfg.seed);
  const long n = static_cast<long>(ds.size());
  std::vector<long> order(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  TrainReport report;
  report.algo = "online";
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle == ShuffleMode::per_epoch) detail::shuffle(order, rng);
    const auto tic = std::chrono::steady_clock::now();
    for (long i = 0; i < n; ++i) {
      const long idx = cfg.shuffle == ShuffleMode::with_replacement
                           ? static_cast<long>(detail::bounded(rng, static_cast<std::uint64_t>(n)))
                           : order[static_cast<std::size_t>(i)];
      sgd_step(state, ds.examples[static_cast<std::size_t>(idx)], cfg);
    }
    report.pass_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());

    const LinearModel snap = state.snapshot();
    const auto scored = score_dataset(snap, ds);
    report.objective.push_back(objective_value(snap, ds, cfg.objective));
    report.train_auc_risk.push_back(detail::wmw_risk(scored, TiePolicy::half));
    report.ties_seen = report.ties_seen || has_ties(scored);
    report.passes = epoch + 1;
  }
  report.converged = true;
  return {state.snapshot(), std::move(report)};
}

void consume_stream(OnlineState& state, const std::function<std::optional<Example>()>& next,
                    const OnlineConfig& cfg) {
  cfg.validate();
  while (auto ex = next()) {
    sgd_step(state, *ex, cfg);
  }
}

}  // namespace ubauc
