#include "ubauc/population.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ubauc/detail/rng.hpp"
#include "ubauc/errors.hpp"
#include "ubauc/metrics.hpp"
#include "ubauc/surrogate.hpp"

namespace ubauc {

void ScoreDistributionPair::validate() const {
  if (!(prior_pos > 0.0) || !(prior_pos < 1.0)) {
    throw ValidationError("class prior must be strictly inside (0, 1)");
  }
  if (!(density_bound > 0.0)) {
    throw ValidationError("density bound alpha' must be > 0");
  }
  if (!sample_pos || !sample_neg) throw ValidationError("samplers must be set");
}

ScoreDistributionPair gaussian_score_pair(double mean_pos, double mean_neg, double sigma,
                                          double prior_pos) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be > 0");
  ScoreDistributionPair d;
  d.sample_pos = [=](std::mt19937_64& rng) { return mean_pos + sigma * detail::gaussian(rng); };
  d.sample_neg = [=](std::mt19937_64& rng) { return mean_neg + sigma * detail::gaussian(rng); };
  d.prior_pos = prior_pos;
  // sup of the mixture <= p sup(rho+) + (1-p) sup(rho-); both peaks equal here.
  d.density_bound = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  d.name = "gaussian";
  return d;
}

ScoreDistributionPair uniform_score_pair(double lo_pos, double hi_pos, double lo_neg,
                                         double hi_neg, double prior_pos) {
  if (!(hi_pos > lo_pos) || !(hi_neg > lo_neg)) throw ValidationError("empty uniform support");
  ScoreDistributionPair d;
  d.sample_pos = [=](std::mt19937_64& rng) {
    return lo_pos + (hi_pos - lo_pos) * detail::uniform01(rng);
  };
  d.sample_neg = [=](std::mt19937_64& rng) {
    return lo_neg + (hi_neg - lo_neg) * detail::uniform01(rng);
  };
  d.prior_pos = prior_pos;
  d.density_bound =
      prior_pos / (hi_pos - lo_pos) + (1.0 - prior_pos) / (hi_neg - lo_neg);
  d.name = "uniform";
  return d;
}

ScoreDistributionPair logistic_score_pair(double loc_pos, double loc_neg, double scale,
                                          double prior_pos) {
  if (!(scale > 0.0)) throw ValidationError("scale must be > 0");
  auto draw = [scale](double loc, std::mt19937_64& rng) {
    const double u = detail::uniform01_open(rng);
    const double v = 1.0 - u;  // in [0,1); log of either side guarded below
    return loc + scale * (std::log(u) - std::log(std::max(v, 0x1.0p-53)));
  };
  ScoreDistributionPair d;
  d.sample_pos = [=](std::mt19937_64& rng) { return draw(loc_pos, rng); };
  d.sample_neg = [=](std::mt19937_64& rng) { return draw(loc_neg, rng); };
  d.prior_pos = prior_pos;
  d.density_bound = 1.0 / (4.0 * scale);  // logistic density peak
  d.name = "logistic";
  return d;
}

namespace {

std::vector<ScoredSample> draw_sample(const ScoreDistributionPair& dist, long n,
                                      std::uint64_t seed) {
  dist.validate();
  if (n < 10) throw ValidationError("Monte-Carlo sample size must be >= 10");
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 rng(seed + 1000003ULL * static_cast<std::uint64_t>(attempt));
    std::vector<ScoredSample> out;
    out.reserve(static_cast<std::size_t>(n));
    long pos = 0;
    for (long i = 0; i < n; ++i) {
      const bool is_pos = detail::uniform01(rng) < dist.prior_pos;
      pos += is_pos;
      out.push_back({is_pos ? dist.sample_pos(rng) : dist.sample_neg(rng), is_pos ? 1 : -1});
    }
    if (pos > 0 && pos < n) return out;
  }
  throw ValidationError("could not draw both classes within the retry budget");
}

}  // namespace

double mc_auc_risk(const ScoreDistributionPair& dist, long n, std::uint64_t seed) {
  return detail::wmw_risk(draw_sample(dist, n, seed), TiePolicy::half);
}

double mc_population_surrogate(const ScoreDistributionPair& dist, long n, std::uint64_t seed) {
  const auto sample = draw_sample(dist, n, seed);
  long n_pos = 0;
  for (const auto& s : sample) n_pos += s.label == 1;
  const long n_neg = n - n_pos;
  // min_lambda (1/n) sum [y(lambda - c)]_+ = (N+ N- / n) * surrogate value.
  return surrogate_variational(sample).value * static_cast<double>(n_pos) *
         static_cast<double>(n_neg) / static_cast<double>(n);
}

PopulationBoundReport verify_population_bound(const ScoreDistributionPair& dist, long n,
                                              std::uint64_t seed) {
  const double p = dist.prior_pos;
  const double factor = dist.density_bound / (p * (1.0 - p));

  const auto lhs_sample = draw_sample(dist, n, seed);
  const double lhs = detail::wmw_risk(lhs_sample, TiePolicy::half);
  long n_pos = 0;
  for (const auto& s : lhs_sample) n_pos += s.label == 1;
  const long n_neg = n - n_pos;
  // Conservative (Hanley-McNeil style) standard error of the risk estimate.
  const double sigma_lhs =
      std::sqrt(std::max(lhs * (1.0 - lhs), 1.0 / static_cast<double>(n)) *
                (1.0 / static_cast<double>(n_pos) + 1.0 / static_cast<double>(n_neg)));

  const auto rhs_sample = draw_sample(dist, n, seed + 1);
  const SurrogateValue sv = surrogate_variational(rhs_sample);
  long rp = 0;
  for (const auto& s : rhs_sample) rp += s.label == 1;
  const double mean_hinge = sv.value * static_cast<double>(rp) *
                            static_cast<double>(n - rp) / static_cast<double>(n);
  double var = 0.0;
  for (const auto& s : rhs_sample) {
    const double h = std::max(0.0, s.label * (sv.lambda_star - s.score));
    var += (h - mean_hinge) * (h - mean_hinge);
  }
  var /= static_cast<double>(n - 1);
  const double sigma_rhs = factor * std::sqrt(var / static_cast<double>(n));

  PopulationBoundReport r;
  r.lhs = lhs;
  r.rhs = factor * mean_hinge;
  r.sigma = std::hypot(sigma_lhs, sigma_rhs);
  r.holds = r.lhs <= r.rhs + 3.0 * r.sigma;
  return r;
}

QuantileIdentityReport verify_quantile_identity(const ScoreDistributionPair& dist, long n, std::uint64_t seed) {
  if (n < 100) throw ValidationError("quantile-identity check needs n >= 100");
  const double p = dist.prior_pos;
  const auto sample = draw_sample(dist, n, seed);

  std::vector<double> all(sample.size());
  std::vector<double> pos;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    all[i] = sample[i].score;
    if (sample[i].label == 1) pos.push_back(sample[i].score);
  }
  std::sort(all.begin(), all.end());
  std::sort(pos.begin(), pos.end());
  const long n_pos = static_cast<long>(pos.size());

  // lhs: c' = right-continuous F-quantile at level 1 - p + p F+(c), averaged
  // over the positive draws.
  double lhs = 0.0, lhs_sq = 0.0;
  for (long j = 1; j <= n_pos; ++j) {
    const double level = 1.0 - p + p * static_cast<double>(j) / static_cast<double>(n_pos);
    long idx = static_cast<long>(std::ceil(level * static_cast<double>(n))) - 1;
    idx = std::clamp(idx, 0L, n - 1);
    const double cp = all[static_cast<std::size_t>(idx)];
    lhs += cp;
    lhs_sq += cp * cp;
  }
  lhs /= static_cast<double>(n_pos);
  const double var_lhs =
      std::max(0.0, lhs_sq / static_cast<double>(n_pos) - lhs * lhs);
  const double sigma_lhs = std::sqrt(var_lhs / static_cast<double>(n_pos));

  // rhs: h(lambda) = mean[(c - lambda)_+]/p + lambda, exact minimum over the
  // sample points via a suffix sum (h is convex piecewise linear).
  std::vector<double> suffix(all.size() + 1, 0.0);
  for (std::size_t i = all.size(); i-- > 0;) suffix[i] = suffix[i + 1] + all[i];
  double rhs = std::numeric_limits<double>::infinity();
  double lam = all.back();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double above = suffix[i] - all[i] * static_cast<double>(all.size() - i);
    const double h = above / (static_cast<double>(n) * p) + all[i];
    if (h < rhs) {
      rhs = h;
      lam = all[i];
    }
  }
  double var_rhs = 0.0;
  for (double c : all) {
    const double hv = std::max(0.0, c - lam) / p + lam;
    var_rhs += (hv - rhs) * (hv - rhs);
  }
  var_rhs /= static_cast<double>(n - 1);
  const double sigma_rhs = std::sqrt(var_rhs / static_cast<double>(n));

  QuantileIdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.sigma = std::hypot(sigma_lhs, sigma_rhs);
  r.holds = std::abs(lhs - rhs) <= 3.0 * r.sigma + 1e-9 * (1.0 + std::abs(lhs));
  return r;
}

}  // namespace ubauc
