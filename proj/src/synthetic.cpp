#include "ubauc/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "ubauc/detail/rng.hpp"
#include "ubauc/errors.hpp"

namespace ubauc {

Dataset make_gaussian_2class(long n, int dim, double separation, double sigma,
                             std::uint64_t seed) {
  if (n < 2 || dim < 1) throw ValidationError("need n >= 2 and dim >= 1");
  std::mt19937_64 rng(seed);
  const double shift = 0.5 * separation / std::sqrt(static_cast<double>(dim));

  std::vector<Example> examples;
  examples.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const int label = i < n / 2 ? 1 : -1;
    Example ex;
    ex.label = label;
    ex.features.dim = dim;
    for (int j = 0; j < dim; ++j) {
      const double v = label * shift + sigma * detail::gaussian(rng);
      if (v != 0.0) ex.features.entries.push_back({j, v});
    }
    examples.push_back(std::move(ex));
  }
  detail::shuffle(examples, rng);
  return Dataset::from_examples(std::move(examples), dim);
}

std::vector<Example> make_sparse_pool(long pool_size, int dim, double density,
                                      std::uint64_t seed) {
  if (pool_size < 1 || dim < 1) throw ValidationError("need pool_size >= 1 and dim >= 1");
  if (!(density > 0.0) || density > 1.0) throw ValidationError("density must be in (0, 1]");
  std::mt19937_64 rng(seed);
  const long nnz = std::max(1L, std::lround(density * dim));

  std::vector<Example> pool;
  pool.reserve(static_cast<std::size_t>(pool_size));
  std::vector<int> indices(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) indices[static_cast<std::size_t>(j)] = j;

  for (long i = 0; i < pool_size; ++i) {
    // Partial Fisher-Yates: the first nnz entries are a uniform subset.
    for (long k = 0; k < nnz; ++k) {
      const auto r = k + static_cast<long>(detail::bounded(rng, static_cast<std::uint64_t>(dim - k)));
      std::swap(indices[static_cast<std::size_t>(k)], indices[static_cast<std::size_t>(r)]);
    }
    std::vector<int> chosen(indices.begin(), indices.begin() + nnz);
    std::sort(chosen.begin(), chosen.end());

    Example ex;
    ex.label = i % 2 == 0 ? 1 : -1;
    ex.features.dim = dim;
    for (int j : chosen) {
      double v = 2.0 * detail::uniform01(rng) - 1.0;
      if (v == 0.0) v = 0.5;
      ex.features.entries.push_back({j, v});
    }
    pool.push_back(std::move(ex));
  }
  return pool;
}

}  // namespace ubauc
