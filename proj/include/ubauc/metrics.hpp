#pragma once

#include <span>
#include <vector>

namespace ubauc {

// A prediction score paired with its binary label.
struct ScoredSample {
  double score = 0;
  int label = 0;  // -1 or +1
};

// Weight given to a positive/negative pair with equal scores: 0.5 under the
// standard WMW convention, 0 when ties are ignored.
enum class TiePolicy { half, strict };

// Ascending sort of the scores plus the 1-based ranks of the positives.
// Ties are broken by original sample index, so the profile is a deterministic
// function of the input sequence.
struct RankProfile {
  std::vector<double> sorted_scores;
  std::vector<long> pos_ranks;  // 1-based, strictly increasing
  long n_pos = 0;
  long n_neg = 0;
  bool had_ties = false;
};

// Stable (score, original index) sort and rank extraction. The rank bound
// r+_i <= n_neg + i is checked on every profile.
RankProfile rank_profile(std::span<const ScoredSample> samples);

// Fraction of (positive, negative) pairs ranked incorrectly (positive scored
// strictly below negative), plus the tie weight for equal scores. O(N+ * N-);
// see detail::wmw_risk for the equivalent O(N log N) evaluation.
double auc_risk_pairwise(std::span<const ScoredSample> samples,
                         TiePolicy policy = TiePolicy::half);

// Rank-based form: (1/(N+ N-)) * sum_i (N- + i - r+_i). Requires the
// deterministic index tiebreak for tied scores; equals the pairwise strict
// form on tie-free input. O(N log N).
double auc_risk_rank(std::span<const ScoredSample> samples);

bool has_ties(std::span<const ScoredSample> samples);

namespace detail {

// Sort-and-sweep evaluation of the pairwise risk; exact equivalent of
// auc_risk_pairwise for both tie policies.
double wmw_risk(std::span<const ScoredSample> samples, TiePolicy policy);

}  // namespace detail

}  // namespace ubauc
