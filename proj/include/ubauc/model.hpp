#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ubauc/dataset.hpp"
#include "ubauc/metrics.hpp"

namespace ubauc {

// Linear predictor f(x) = w . x plus the auxiliary threshold lambda of the
// joint training objective. Threshold-free trainers leave it empty.
struct LinearModel {
  std::vector<double> weights;
  std::optional<double> threshold;

  int dim() const { return static_cast<int>(weights.size()); }
};

// A solver produced (or was about to produce) a non-finite iterate. Carries
// the last state that still passed the finiteness checks.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, LinearModel last)
      : std::runtime_error(what), last_state_(std::move(last)) {}
  const LinearModel& last_state() const { return last_state_; }

 private:
  LinearModel last_state_;
};

double predict_score(const LinearModel& model, const SparseVector& x);
std::vector<ScoredSample> score_dataset(const LinearModel& model, const Dataset& ds);

// JSON model file: {"dim": .., "weights": [..], "lambda": number-or-null}.
std::string model_to_json(const LinearModel& model);
LinearModel model_from_json(const std::string& text);
void save_model(const LinearModel& model, const std::string& path);
LinearModel load_model(const std::string& path);

}  // namespace ubauc
