#pragma once

#include <span>

#include "ubauc/dataset.hpp"
#include "ubauc/metrics.hpp"
#include "ubauc/model.hpp"

namespace ubauc {

enum class SurrogateForm { sorted, variational };

// Value of the univariate surrogate
//   L~ = (1/(N+ N-)) [ sum of top-N+ scores - sum of positive scores ]
//      = (1/(N+ N-)) min_lambda sum_i [y_i (lambda - c_i)]_+ ,
// together with the lambda realizing the minimum (midpoint of the optimal
// interval [c^_{N-}, c^_{N-+1}]).
struct SurrogateValue {
  double value = 0;
  double lambda_star = 0;
  SurrogateForm form = SurrogateForm::sorted;
};

// Per-instance constants of the two-sided bound
//   alpha_upper * L~ >= L_AUC >= alpha_lower * L~ ,
// built from the adjacent gaps of the sorted scores. Defined for tie-free
// scores only.
struct BoundConstants {
  double alpha_upper = 0;  // 1 / min adjacent gap
  double alpha_lower = 0;  // 1 / max adjacent gap
};

enum class Regularizer { squared_norm };

// Weights of the augmented training objective
//   (gamma/2)||w||^2 + sum_i { [y_i(lambda - w.x_i)]_+ + (beta/2)(1 - y_i w.x_i)^2 }.
// beta > 0 is required for training: without the least-squares term the
// surrogate is positively homogeneous in w and admits the all-zero predictor.
struct Objective {
  double beta = 1.0;
  double gamma = 0.0;
  Regularizer regularizer = Regularizer::squared_norm;

  void validate() const;               // beta >= 0, gamma >= 0, finite
  void validate_for_training() const;  // additionally beta > 0
};

// Sorted-score form (rank route). Requires both classes; ties are broken by
// index as in rank_profile.
SurrogateValue surrogate_sorted(std::span<const ScoredSample> samples);

// Variational form evaluated through the top-k identity with k = N+.
// Equals surrogate_sorted on tie-free input.
SurrogateValue surrogate_variational(std::span<const ScoredSample> samples);

// Throws ValidationError on tied scores (zero gap) or N < 2.
BoundConstants bound_constants(std::span<const ScoredSample> samples);

// Full objective at the model's stored (w, lambda).
double objective_value(const LinearModel& model, const Dataset& ds, const Objective& obj);

}  // namespace ubauc
