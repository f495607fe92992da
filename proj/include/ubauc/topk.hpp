#pragma once

#include <span>

namespace ubauc {

// Result of the variational sum-of-top-k evaluation
//   sum_{top k} z = min_lambda { k*lambda + sum_i [z_i - lambda]_+ },
// where the minimizing lambda sweeps the half-open interval
// [z_(N-k), z_(N-k+1)) for 1 <= k < N (order statistics, 1-based). For k = N
// the interval is open-ended below: any lambda <= min(z) is optimal and
// lambda_lo is -infinity.
struct TopKResult {
  double sum = 0;
  double lambda_star = 0;
  double lambda_lo = 0;
  double lambda_hi = 0;
};

// Sort-based oracle: sum of the k largest elements. Throws ValidationError
// when k is out of [1, N].
double topk_sum_direct(std::span<const double> z, long k);

// Evaluates the variational form at lambda* = z_(N-k) (selection in O(N),
// no full sort) and cross-checks the value against topk_sum_direct. With
// tied inputs lambda* is the order statistic with multiplicity, which is
// still optimal.
TopKResult topk_sum_variational(std::span<const double> z, long k);

}  // namespace ubauc
