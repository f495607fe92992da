#include "ubauc/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ubauc/errors.hpp"
#include "ubauc/topk.hpp"

namespace ubauc {

void Objective::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("beta must be finite and >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be finite and >= 0");
}

void Objective::validate_for_training() const {
  validate();
  if (beta == 0.0) {
    throw ValidationError(
        "beta must be > 0 for training: the surrogate alone is positively homogeneous in w, "
        "so without the least-squares term the all-zero predictor is a trivial minimizer");
  }
}

SurrogateValue surrogate_sorted(std::span<const ScoredSample> samples) {
  const RankProfile rp = rank_profile(samples);

  double top_sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(rp.n_neg); i < rp.sorted_scores.size(); ++i) {
    top_sum += rp.sorted_scores[i];
  }
  double pos_sum = 0.0;
  for (const auto& s : samples) {
    if (s.label == 1) pos_sum += s.score;
  }

  SurrogateValue v;
  v.form = SurrogateForm::sorted;
  v.value = std::max(0.0, (top_sum - pos_sum) /
                              (static_cast<double>(rp.n_pos) * static_cast<double>(rp.n_neg)));
  v.lambda_star = 0.5 * (rp.sorted_scores[static_cast<std::size_t>(rp.n_neg) - 1] +
                         rp.sorted_scores[static_cast<std::size_t>(rp.n_neg)]);
  return v;
}

SurrogateValue surrogate_variational(std::span<const ScoredSample> samples) {
  long n_pos = 0, n_neg = 0;
  std::vector<double> scores;
  scores.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.label == 1) ++n_pos;
    else if (s.label == -1) ++n_neg;
    else throw ValidationError("labels must be -1 or +1");
    scores.push_back(s.score);
  }
  if (n_pos == 0 || n_neg == 0) {
    throw ValidationError("surrogate needs at least one positive and one negative example");
  }

  // The top-k identity with k = N+ puts the optimum in [z_(N-), z_(N-+1)); both endpoints are
  // minimizers of the hinge sum, so the midpoint is exactly optimal as well.
  const TopKResult top = topk_sum_variational(scores, n_pos);
  SurrogateValue v;
  v.form = SurrogateForm::variational;
  v.lambda_star = 0.5 * (top.lambda_lo + top.lambda_hi);

  double hinge_sum = 0.0;
  for (const auto& s : samples) {
    hinge_sum += std::max(0.0, static_cast<double>(s.label) * (v.lambda_star - s.score));
  }
  v.value = hinge_sum / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
  return v;
}

BoundConstants bound_constants(std::span<const ScoredSample> samples) {
  if (samples.size() < 2) throw ValidationError("bound constants need N >= 2");
  const RankProfile rp = rank_profile(samples);

  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  for (std::size_t i = 1; i < rp.sorted_scores.size(); ++i) {
    const double gap = rp.sorted_scores[i] - rp.sorted_scores[i - 1];
    if (gap == 0.0) {
      throw ValidationError("bound constants are undefined for tied scores (zero gap)");
    }
    min_gap = std::min(min_gap, gap);
    max_gap = std::max(max_gap, gap);
  }
  return {1.0 / min_gap, 1.0 / max_gap};
}

double objective_value(const LinearModel& model, const Dataset& ds, const Objective& obj) {
  obj.validate();
  if (model.dim() != ds.dim) {
    throw ValidationError("model dim " + std::to_string(model.dim()) +
                          " does not match dataset dim " + std::to_string(ds.dim));
  }
  if (!model.threshold) throw ValidationError("model has no threshold (lambda)");
  const double lambda = *model.threshold;

  double norm2 = 0.0;
  for (double w : model.weights) norm2 += w * w;

  double total = 0.5 * obj.gamma * norm2;
  for (const auto& ex : ds.examples) {
    const double s = ex.features.dot(model.weights);
    const double y = ex.label;
    total += std::max(0.0, y * (lambda - s));
    const double resid = 1.0 - y * s;
    total += 0.5 * obj.beta * resid * resid;
  }
  return total;
}

}  // namespace ubauc
