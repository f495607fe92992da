#include "ubauc/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ubauc/errors.hpp"

namespace ubauc {

namespace {

struct SplitScores {
  std::vector<double> pos;
  std::vector<double> neg;
};

SplitScores split_scores(std::span<const ScoredSample> samples) {
  SplitScores s;
  for (const auto& e : samples) {
    if (e.label == 1) s.pos.push_back(e.score);
    else if (e.label == -1) s.neg.push_back(e.score);
    else throw ValidationError("labels must be -1 or +1");
  }
  if (s.pos.empty() || s.neg.empty()) {
    throw ValidationError("pairwise risk needs both classes");
  }
  return s;
}

double log_sum_exp(const std::vector<double>& v, double sign) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, sign * x);
  double s = 0.0;
  for (double x : v) s += std::exp(sign * x - m);
  return m + std::log(s);
}

}  // namespace

double pairwise_surrogate_risk(std::span<const ScoredSample> samples, PairwiseLoss kind) {
  const SplitScores s = split_scores(samples);
  const double pairs = static_cast<double>(s.pos.size()) * static_cast<double>(s.neg.size());

  if (kind == PairwiseLoss::rank_boost) {
    // sum_{ij} e^{c_j - c_i} = (sum_j e^{c_j}) (sum_i e^{-c_i}), evaluated in
    // log space so only the final value can overflow.
    const double log_total = log_sum_exp(s.neg, +1.0) + log_sum_exp(s.pos, -1.0);
    const double risk = std::exp(log_total - std::log(pairs));
    if (!std::isfinite(risk)) {
      throw DivergenceError("rank-boost risk overflowed to non-finite", {});
    }
    return risk;
  }

  double total = 0.0;
  for (double ci : s.pos) {
    for (double cj : s.neg) {
      const double h = std::max(0.0, 1.0 - (ci - cj));
      total += kind == PairwiseLoss::squared_hinge ? h * h : h;
    }
  }
  return total / pairs;
}

double svm_objective(const LinearModel& model, const Dataset& ds) {
  if (model.dim() != ds.dim) {
    throw ValidationError("model dim does not match dataset dim");
  }
  if (!model.threshold) throw ValidationError("model has no threshold (lambda)");
  const double lambda = *model.threshold;
  double total = 0.0;
  for (const auto& ex : ds.examples) {
    const double s = ex.features.dot(model.weights);
    total += std::max(0.0, 1.0 + ex.label * (lambda - s));
  }
  return total;
}

namespace {

// Pair-hinge risk and its subgradient in O(N log N + nnz) per evaluation: the
// active-pair counts for each example come from binary searches over the
// sorted scores of the other class.
struct PairHingeEval {
  double risk = 0.0;
  std::vector<double> coeff;  // per-example weight on x in the risk subgradient
};

PairHingeEval eval_pair_hinge(const Dataset& ds, const std::vector<double>& scores) {
  std::vector<double> sp, sn;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    (ds.examples[i].label == 1 ? sp : sn).push_back(scores[i]);
  }
  std::sort(sp.begin(), sp.end());
  std::sort(sn.begin(), sn.end());
  std::vector<double> sn_suffix(sn.size() + 1, 0.0);
  for (std::size_t j = sn.size(); j-- > 0;) sn_suffix[j] = sn_suffix[j + 1] + sn[j];

  const double pairs = static_cast<double>(sp.size()) * static_cast<double>(sn.size());
  PairHingeEval out;
  out.coeff.assign(ds.size(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double c = scores[i];
    if (ds.examples[i].label == 1) {
      // negatives with c_j > c - 1 are active against this positive
      const auto it = std::upper_bound(sn.begin(), sn.end(), c - 1.0);
      const long a = static_cast<long>(sn.end() - it);
      out.coeff[i] = -static_cast<double>(a) / pairs;
      out.risk += (static_cast<double>(a) * (1.0 - c) + sn_suffix[sn.size() - a]) / pairs;
    } else {
      // positives with c_i < c + 1 are active against this negative
      const auto it = std::lower_bound(sp.begin(), sp.end(), c + 1.0);
      out.coeff[i] = static_cast<double>(it - sp.begin()) / pairs;
    }
  }
  return out;
}

}  // namespace

LinearModel train_pairwise_hinge_batch(const Dataset& ds, double gamma, int epochs,
                                       double step0, std::uint64_t seed, TrainReport* report,
                                       long cap) {
  (void)seed;  // deterministic full-gradient trainer; see header
  if (static_cast<long>(ds.size()) > cap) {
    throw ValidationError("dataset exceeds the desk-scale cap (" + std::to_string(cap) +
                          ") of the pairwise trainer; use the online univariate solver instead");
  }
  if (!ds.labels_binary() || ds.n_pos == 0 || ds.n_neg == 0) {
    throw ValidationError("pairwise trainer needs binary labels with both classes present");
  }
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (!(step0 > 0.0)) throw ValidationError("step0 must be > 0");
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");

  std::vector<double> w(static_cast<std::size_t>(ds.dim), 0.0);
  std::vector<double> best_w = w;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<double> scores(ds.size(), 0.0);
  PairHingeEval ev = eval_pair_hinge(ds, scores);  // at w = 0
  best_obj = ev.risk;

  if (report) {
    *report = TrainReport{};
    report->algo = "pairwise-hinge";
  }

  for (int t = 1; t <= epochs; ++t) {
    const auto tic = std::chrono::steady_clock::now();

    // step capped at 1/gamma so the regularizer shrink never overshoots
    double eta = step0 / std::sqrt(static_cast<double>(t));
    if (gamma > 0.0) eta = std::min(eta, 1.0 / gamma);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= eta * gamma * w[j];
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ev.coeff[i] != 0.0) axpy(-eta * ev.coeff[i], ds.examples[i].features, w);
    }

    for (std::size_t i = 0; i < ds.size(); ++i) {
      scores[i] = ds.examples[i].features.dot(w);
    }
    ev = eval_pair_hinge(ds, scores);

    double norm2 = 0.0;
    for (double x : w) norm2 += x * x;
    const double obj = 0.5 * gamma * norm2 + ev.risk;
    if (!std::isfinite(obj)) {
      throw DivergenceError("pairwise trainer diverged at epoch " + std::to_string(t),
                            LinearModel{best_w, std::nullopt});
    }
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
    }

    if (report) {
      std::vector<ScoredSample> scored(ds.size());
      for (std::size_t i = 0; i < ds.size(); ++i) {
        scored[i] = {scores[i], ds.examples[i].label};
      }
      report->objective.push_back(obj);
      report->train_auc_risk.push_back(detail::wmw_risk(scored, TiePolicy::half));
      report->ties_seen = report->ties_seen || has_ties(scored);
      report->pass_seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count());
      report->passes = t;
    }
  }
  if (report) report->converged = true;
  return LinearModel{std::move(best_w), std::nullopt};
}

}  // namespace ubauc
