#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ubauc {

// One feature of a sparse example. Indices are 0-based in memory; the LIBSVM
// text format is 1-based and converted at the parse boundary.
struct FeatureEntry {
  int index;
  double value;
};

// Sparse feature vector. Invariants: indices strictly increasing, all < dim,
// no stored zero values. validate() enforces them.
struct SparseVector {
  std::vector<FeatureEntry> entries;
  int dim = 0;

  std::size_t nnz() const { return entries.size(); }
  void validate() const;

  // Inner product against a dense weight vector of size >= dim.
  double dot(std::span<const double> w) const;
  double squared_norm() const;
};

// Labeled example. After binarization the label is exactly -1 or +1.
struct Example {
  SparseVector features;
  int label = 0;
};

// w += alpha * x, touching only the stored coordinates of x.
void axpy(double alpha, const SparseVector& x, std::span<double> w);

}  // namespace ubauc
