#include "ubauc/sparse.hpp"

#include <cmath>
#include <string>

#include "ubauc/errors.hpp"

namespace ubauc {

void SparseVector::validate() const {
  int prev = -1;
  for (const auto& e : entries) {
    if (e.index <= prev) {
      throw ValidationError("sparse indices must be strictly increasing (got " +
                            std::to_string(e.index) + " after " + std::to_string(prev) + ")");
    }
    if (e.index >= dim) {
      throw ValidationError("sparse index " + std::to_string(e.index) +
                            " out of range for dim " + std::to_string(dim));
    }
    if (e.value == 0.0) {
      throw ValidationError("sparse vectors must not store zero values (index " +
                            std::to_string(e.index) + ")");
    }
    if (!std::isfinite(e.value)) {
      throw ValidationError("non-finite feature value at index " + std::to_string(e.index));
    }
    prev = e.index;
  }
}

double SparseVector::dot(std::span<const double> w) const {
  double s = 0.0;
  for (const auto& e : entries) s += w[static_cast<std::size_t>(e.index)] * e.value;
  return s;
}

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.value * e.value;
  return s;
}

void axpy(double alpha, const SparseVector& x, std::span<double> w) {
  for (const auto& e : x.entries) w[static_cast<std::size_t>(e.index)] += alpha * e.value;
}

}  // namespace ubauc
