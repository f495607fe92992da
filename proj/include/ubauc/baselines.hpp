#pragma once

#include <cstdint>
#include <span>

#include "ubauc/dataset.hpp"
#include "ubauc/metrics.hpp"
#include "ubauc/model.hpp"
#include "ubauc/report.hpp"

namespace ubauc {

// Classic pairwise surrogates of the AUC risk. All satisfy l(c, c) = 1.
enum class PairwiseLoss {
  hinge,          // [1 - (c_i - c_j)]_+
  squared_hinge,  // [1 - (c_i - c_j)]_+^2
  rank_boost,     // e^{c_j - c_i}
};

// (1/(N+ N-)) sum over (positive i, negative j) of l(c_i, c_j). The hinge
// losses are the literal O(N+ N-) sums (desk scale); rank_boost factorizes
// and is evaluated in log-sum-exp form to avoid overflow, with an error on a
// non-finite result.
double pairwise_surrogate_risk(std::span<const ScoredSample> samples, PairwiseLoss kind);

// SVM objective with the threshold folded in as -lambda:
//   sum_i [1 + y_i (lambda - w . x_i)]_+ .
// Upper-bounds N+ N- times the univariate surrogate at the same w.
double svm_objective(const LinearModel& model, const Dataset& ds);

// Deterministic full-subgradient descent on
//   (gamma/2)||w||^2 + pairwise hinge risk,
// step size step0/sqrt(t), best iterate returned, threshold left unset.
// `seed` is accepted for signature stability but unused: the trainer has no
// stochastic component. Datasets above `cap` examples are rejected with a
// pointer at the univariate solvers.
LinearModel train_pairwise_hinge_batch(const Dataset& ds, double gamma, int epochs,
                                       double step0, std::uint64_t seed,
                                       TrainReport* report = nullptr, long cap = 10000);

}  // namespace ubauc
