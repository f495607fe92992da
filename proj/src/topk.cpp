#include "ubauc/topk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ubauc/errors.hpp"

namespace ubauc {

namespace {

void check_k(std::span<const double> z, long k) {
  const long n = static_cast<long>(z.size());
  if (n == 0) throw ValidationError("top-k of an empty list");
  if (k < 1 || k > n) {
    throw ValidationError("k must be in [1, N], got k=" + std::to_string(k) +
                          " with N=" + std::to_string(n));
  }
}

double objective_at(std::span<const double> z, long k, double lambda) {
  double s = static_cast<double>(k) * lambda;
  for (double v : z) s += std::max(0.0, v - lambda);
  return s;
}

}  // namespace

double topk_sum_direct(std::span<const double> z, long k) {
  check_k(z, k);
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (std::size_t i = sorted.size() - static_cast<std::size_t>(k); i < sorted.size(); ++i) {
    s += sorted[i];
  }
  return s;
}

TopKResult topk_sum_variational(std::span<const double> z, long k) {
  check_k(z, k);
  const long n = static_cast<long>(z.size());

  TopKResult r;
  if (k == n) {
    // Any lambda <= min(z) is optimal; the interval is open-ended below.
    r.lambda_hi = *std::min_element(z.begin(), z.end());
    r.lambda_lo = -std::numeric_limits<double>::infinity();
    r.lambda_star = r.lambda_hi - 1.0;
  } else {
    std::vector<double> work(z.begin(), z.end());
    const auto split = work.begin() + static_cast<std::ptrdiff_t>(n - k);
    std::nth_element(work.begin(), split - 1, work.end());
    r.lambda_star = *(split - 1);  // (N-k)-th smallest, with multiplicity under ties
    r.lambda_lo = r.lambda_star;
    r.lambda_hi = *std::min_element(split, work.end());
  }
  r.sum = objective_at(z, k, r.lambda_star);

  const double direct = topk_sum_direct(z, k);
  if (std::abs(r.sum - direct) > 1e-9 * std::max(1.0, std::abs(direct))) {
    throw std::logic_error("variational top-k sum disagrees with the sorted sum");
  }
  return r;
}

}  // namespace ubauc
