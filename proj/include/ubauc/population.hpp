#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace ubauc {

// Pair of score distributions (conditional on class) with the class prior and
// an analytic bound on the mixture density. The bound is supplied, not
// estimated: density estimation would add an uncontrolled error term to a
// bound check.
struct ScoreDistributionPair {
  std::function<double(std::mt19937_64&)> sample_pos;
  std::function<double(std::mt19937_64&)> sample_neg;
  double prior_pos = 0.5;      // p in (0,1)
  double density_bound = 0.0;  // alpha' >= sup_c p(c)
  std::string name;

  void validate() const;
};

ScoreDistributionPair gaussian_score_pair(double mean_pos, double mean_neg, double sigma,
                                          double prior_pos);
ScoreDistributionPair uniform_score_pair(double lo_pos, double hi_pos, double lo_neg,
                                         double hi_neg, double prior_pos);
ScoreDistributionPair logistic_score_pair(double loc_pos, double loc_neg, double scale,
                                          double prior_pos);

// Empirical pairwise AUC risk of n draws (label +1 with probability p).
// Single-class draws are retried with a derived seed, bounded.
double mc_auc_risk(const ScoreDistributionPair& dist, long n, std::uint64_t seed);

// Estimate of min_lambda E[y (lambda - c)]_+ : the empirical minimizer is an
// order statistic, so the estimate reuses the finite-sample surrogate
// machinery rescaled by N+ N- / n.
double mc_population_surrogate(const ScoreDistributionPair& dist, long n, std::uint64_t seed);

struct PopulationBoundReport {
  double lhs = 0;    // MC estimate of L_AUC
  double rhs = 0;    // alpha' / (p(1-p)) * MC surrogate
  double sigma = 0;  // combined MC standard error of rhs - lhs
  bool holds = false;
};

// Checks L_AUC <= alpha'/(p(1-p)) * min_lambda E[y(lambda - c)]_+ at 3 sigma
// MC slack.
PopulationBoundReport verify_population_bound(const ScoreDistributionPair& dist, long n,
                                              std::uint64_t seed);

struct QuantileIdentityReport {
  double lhs = 0;  // E[c'], c' the F-quantile at level 1 - p + p F+(c)
  double rhs = 0;  // min_lambda { E[(c - lambda)_+]/p + lambda }
  double sigma = 0;
  bool holds = false;
};

// Verifies the quantile identity behind the population bound on one sample,
// realizing c' through right-continuous empirical-CDF inversion.
QuantileIdentityReport verify_quantile_identity(const ScoreDistributionPair& dist, long n, std::uint64_t seed);

}  // namespace ubauc
