#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ubauc/sparse.hpp"

namespace ubauc {

// Labeled sparse dataset with cached class counts. n_pos/n_neg count labels
// that are literally +1/-1; until binarization they need not sum to size().
struct Dataset {
  std::vector<Example> examples;
  int dim = 0;
  long n_pos = 0;
  long n_neg = 0;

  std::size_t size() const { return examples.size(); }
  bool labels_binary() const {
    return n_pos + n_neg == static_cast<long>(examples.size());
  }

  // Builds a dataset from examples, recomputing dim (if smaller than the max
  // feature index) and the class counts.
  static Dataset from_examples(std::vector<Example> ex, int dim = 0);
};

// Parses LIBSVM text: each nonempty line is `<label> <idx>:<val> ...` with
// 1-based strictly increasing indices. dim becomes the largest index seen.
// Labels are kept as parsed integers; binarization is a separate step.
// Throws ParseError with the line number on malformed input.
Dataset parse_libsvm(std::istream& in);

// Reads a LIBSVM file from disk; paths ending in ".gz" are decompressed
// transparently.
Dataset load_libsvm(const std::string& path);

// Writes LIBSVM text with 1-based indices. Values are printed in shortest
// round-trip form, so parse(serialize(ds)) reproduces ds exactly.
void serialize_libsvm(const Dataset& ds, std::ostream& out);
std::string serialize_libsvm(const Dataset& ds);

// Maps the original class labels onto {-1,+1} by splitting the distinct
// labels into two groups of equal class-count (+-1 when odd) with a seeded
// shuffle. Already-binary {-1,+1} input is returned unchanged. Deterministic
// per seed; throws ValidationError on single-class input.
Dataset binarize_by_class_partition(const Dataset& ds, std::uint64_t seed);

// Uniform random subset without replacement of size round(fraction * N), in
// permuted order. For binary-labeled input the draw is retried (bounded) until
// both classes are present; throws ValidationError when impossible.
Dataset subsample_split(const Dataset& ds, double fraction, std::uint64_t seed);

// Per-dimension affine map to [-1,1] fitted on a training set. Dimensions a
// sparse example does not store count as zeros. Constant dimensions map to 0.
struct ScalingParams {
  int dim = 0;
  std::vector<double> min;
  std::vector<double> max;

  std::string to_json() const;                     // {"dim":..,"min":[..],"max":[..]}
  static ScalingParams from_json(const std::string& text);
};

// Fits ScalingParams on ds and returns the transformed dataset. Values
// outside the fitted range on later data are mapped through unchanged (no
// clipping).
std::pair<Dataset, ScalingParams> standardize(const Dataset& ds);
Dataset apply_scaling(const Dataset& ds, const ScalingParams& params);

}  // namespace ubauc
