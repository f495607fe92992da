#pragma once

#include <cstdint>
#include <vector>

#include "ubauc/dataset.hpp"

namespace ubauc {

// Two balanced Gaussian clouds at +-(separation/2) along the all-ones
// direction, isotropic noise sigma, shuffled order. separation/sigma >> 1
// gives an (almost surely) linearly separable problem.
Dataset make_gaussian_2class(long n, int dim, double separation, double sigma,
                             std::uint64_t seed);

// Pool of random sparse examples for the benchmark harness: each example has
// round(density * dim) uniformly placed entries with values in [-1, 1] and an
// alternating label.
std::vector<Example> make_sparse_pool(long pool_size, int dim, double density,
                                      std::uint64_t seed);

}  // namespace ubauc
