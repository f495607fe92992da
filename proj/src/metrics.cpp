#include "ubauc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ubauc/errors.hpp"

namespace ubauc {

namespace {

void require_both_classes(std::span<const ScoredSample> samples) {
  long pos = 0, neg = 0;
  for (const auto& s : samples) {
    if (s.label == 1) ++pos;
    else if (s.label == -1) ++neg;
    else throw ValidationError("labels must be -1 or +1");
    if (!std::isfinite(s.score)) throw ValidationError("scores must be finite");
  }
  if (pos == 0 || neg == 0) {
    throw ValidationError("AUC needs at least one positive and one negative example");
  }
}

}  // namespace

bool has_ties(std::span<const ScoredSample> samples) {
  std::vector<double> scores(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) scores[i] = samples[i].score;
  std::sort(scores.begin(), scores.end());
  return std::adjacent_find(scores.begin(), scores.end()) != scores.end();
}

RankProfile rank_profile(std::span<const ScoredSample> samples) {
  if (samples.empty()) throw ValidationError("rank_profile needs a nonempty input");
  require_both_classes(samples);

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (samples[a].score != samples[b].score) return samples[a].score < samples[b].score;
    return a < b;  // deterministic tiebreak by original index
  });

  RankProfile rp;
  rp.sorted_scores.reserve(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& s = samples[order[i]];
    rp.sorted_scores.push_back(s.score);
    if (s.label == 1) {
      ++rp.n_pos;
      rp.pos_ranks.push_back(static_cast<long>(i) + 1);
    } else {
      ++rp.n_neg;
    }
  }
  rp.had_ties = std::adjacent_find(rp.sorted_scores.begin(), rp.sorted_scores.end()) !=
                rp.sorted_scores.end();

  // Rank bound: the i-th positive outranks at most N- + i - 1 elements.
  for (std::size_t i = 0; i < rp.pos_ranks.size(); ++i) {
    if (rp.pos_ranks[i] > rp.n_neg + static_cast<long>(i) + 1) {
      throw std::logic_error("rank bound r+_i <= N- + i violated");
    }
  }
  return rp;
}

double auc_risk_pairwise(std::span<const ScoredSample> samples, TiePolicy policy) {
  require_both_classes(samples);
  double wrong = 0.0;
  long n_pos = 0, n_neg = 0;
  for (const auto& p : samples) {
    if (p.label != 1) continue;
    ++n_pos;
    for (const auto& q : samples) {
      if (q.label != -1) continue;
      if (p.score < q.score) wrong += 1.0;
      else if (p.score == q.score && policy == TiePolicy::half) wrong += 0.5;
    }
  }
  for (const auto& q : samples) n_neg += q.label == -1;
  return wrong / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double auc_risk_rank(std::span<const ScoredSample> samples) {
  const RankProfile rp = rank_profile(samples);
  long long wrong = 0;
  for (std::size_t i = 0; i < rp.pos_ranks.size(); ++i) {
    wrong += rp.n_neg + static_cast<long>(i) + 1 - rp.pos_ranks[i];
  }
  return static_cast<double>(wrong) /
         (static_cast<double>(rp.n_pos) * static_cast<double>(rp.n_neg));
}

namespace detail {

double wmw_risk(std::span<const ScoredSample> samples, TiePolicy policy) {
  require_both_classes(samples);
  std::vector<ScoredSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredSample& a, const ScoredSample& b) { return a.score < b.score; });

  long n_pos = 0, n_neg = 0;
  for (const auto& s : sorted) (s.label == 1 ? n_pos : n_neg) += 1;

  double wrong = 0.0;
  long neg_below = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    long tie_pos = 0, tie_neg = 0;
    while (j < sorted.size() && sorted[j].score == sorted[i].score) {
      (sorted[j].label == 1 ? tie_pos : tie_neg) += 1;
      ++j;
    }
    const long neg_above = n_neg - neg_below - tie_neg;
    wrong += static_cast<double>(tie_pos) * static_cast<double>(neg_above);
    if (policy == TiePolicy::half) {
      wrong += 0.5 * static_cast<double>(tie_pos) * static_cast<double>(tie_neg);
    }
    neg_below += tie_neg;
    i = j;
  }
  return wrong / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

}  // namespace detail

}  // namespace ubauc
