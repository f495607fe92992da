#include "ubauc/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ubauc/detail/rng.hpp"
#include "ubauc/errors.hpp"

namespace ubauc {

namespace {

// std::from_chars does not accept a leading '+', which LIBSVM labels and
// values routinely carry.
std::string_view strip_plus(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  return tok;
}

bool parse_double(std::string_view tok, double& out) {
  tok = strip_plus(tok);
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool parse_int(std::string_view tok, int& out) {
  tok = strip_plus(tok);
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

void recount(Dataset& ds) {
  ds.n_pos = 0;
  ds.n_neg = 0;
  for (const auto& ex : ds.examples) {
    if (ex.label == 1) ++ds.n_pos;
    if (ex.label == -1) ++ds.n_neg;
  }
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

Dataset Dataset::from_examples(std::vector<Example> ex, int dim) {
  Dataset ds;
  ds.examples = std::move(ex);
  ds.dim = dim;
  for (const auto& e : ds.examples) {
    if (!e.features.entries.empty()) {
      ds.dim = std::max(ds.dim, e.features.entries.back().index + 1);
    }
  }
  for (auto& e : ds.examples) e.features.dim = ds.dim;
  recount(ds);
  return ds;
}

Dataset parse_libsvm(std::istream& in) {
  Dataset ds;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;

    Example ex;
    std::size_t end = line.find_first_of(" \t", pos);
    std::string_view label_tok(line.data() + pos, (end == std::string::npos ? line.size() : end) - pos);
    double label_val = 0;
    if (!parse_double(label_tok, label_val) || std::nearbyint(label_val) != label_val ||
        std::abs(label_val) > 1e9) {
      throw ParseError(lineno, "bad label '" + std::string(label_tok) + "'");
    }
    ex.label = static_cast<int>(label_val);

    int prev_index = 0;  // 1-based on disk
    pos = end;
    while (pos != std::string::npos) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string::npos) break;
      end = line.find_first_of(" \t", pos);
      std::string_view tok(line.data() + pos, (end == std::string::npos ? line.size() : end) - pos);
      pos = end;

      const std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(lineno, "expected idx:val, got '" + std::string(tok) + "'");
      }
      int index = 0;
      double value = 0;
      if (!parse_int(tok.substr(0, colon), index) || index < 1) {
        throw ParseError(lineno, "bad feature index in '" + std::string(tok) + "'");
      }
      if (index <= prev_index) {
        throw ParseError(lineno, "feature indices must be strictly increasing (" +
                                     std::to_string(index) + " after " +
                                     std::to_string(prev_index) + ")");
      }
      if (!parse_double(tok.substr(colon + 1), value)) {
        throw ParseError(lineno, "bad feature value in '" + std::string(tok) + "'");
      }
      prev_index = index;
      ds.dim = std::max(ds.dim, index);
      if (value != 0.0) ex.features.entries.push_back({index - 1, value});
    }
    ds.examples.push_back(std::move(ex));
  }
  for (auto& ex : ds.examples) ex.features.dim = ds.dim;
  recount(ds);
  return ds;
}

namespace {

std::string read_gz(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw ValidationError("cannot open file: " + path);
  std::string out;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(f, buf, sizeof(buf))) > 0) out.append(buf, static_cast<std::size_t>(n));
  const bool bad = n < 0;
  gzclose(f);
  if (bad) throw ValidationError("gzip read error: " + path);
  return out;
}

}  // namespace

Dataset load_libsvm(const std::string& path) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    std::istringstream in(read_gz(path));
    return parse_libsvm(in);
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  return parse_libsvm(in);
}

void serialize_libsvm(const Dataset& ds, std::ostream& out) {
  for (const auto& ex : ds.examples) {
    out << ex.label;
    for (const auto& e : ex.features.entries) {
      out << ' ' << (e.index + 1) << ':' << format_double(e.value);
    }
    out << '\n';
  }
}

std::string serialize_libsvm(const Dataset& ds) {
  std::ostringstream out;
  serialize_libsvm(ds, out);
  return out.str();
}

Dataset binarize_by_class_partition(const Dataset& ds, std::uint64_t seed) {
  std::map<int, long> counts;
  for (const auto& ex : ds.examples) ++counts[ex.label];
  if (counts.size() < 2) {
    throw ValidationError("binarize requires at least 2 distinct labels (AUC is undefined)");
  }
  if (counts.size() == 2 && counts.count(-1) && counts.count(1)) {
    return ds;  // already binary
  }

  std::vector<int> labels;
  labels.reserve(counts.size());
  for (const auto& [label, n] : counts) labels.push_back(label);
  std::mt19937_64 rng(seed);
  detail::shuffle(labels, rng);

  std::map<int, int> sign;
  const std::size_t half = (labels.size() + 1) / 2;
  for (std::size_t i = 0; i < labels.size(); ++i) sign[labels[i]] = i < half ? 1 : -1;

  Dataset out = ds;
  for (auto& ex : out.examples) ex.label = sign[ex.label];
  recount(out);
  return out;
}

Dataset subsample_split(const Dataset& ds, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ValidationError("fraction must be in (0, 1]");
  }
  const long n = static_cast<long>(ds.size());
  const long m = std::llround(fraction * static_cast<double>(n));
  if (m < 2) throw ValidationError("subsample too small: fraction * N must be >= 2");

  std::mt19937_64 rng(seed);
  const bool need_both = ds.labels_binary();
  for (int attempt = 0; attempt < 32; ++attempt) {
    auto idx = detail::permutation(n, rng);
    idx.resize(static_cast<std::size_t>(m));
    std::vector<Example> subset;
    subset.reserve(idx.size());
    long pos = 0, neg = 0;
    for (long i : idx) {
      const auto& ex = ds.examples[static_cast<std::size_t>(i)];
      pos += ex.label == 1;
      neg += ex.label == -1;
      subset.push_back(ex);
    }
    if (!need_both || (pos >= 1 && neg >= 1)) {
      Dataset out;
      out.examples = std::move(subset);
      out.dim = ds.dim;
      recount(out);
      return out;
    }
  }
  throw ValidationError("could not draw a subset containing both classes within 32 attempts");
}

namespace {

Dataset transform_with(const Dataset& ds, const ScalingParams& p) {
  const int out_dim = std::max(ds.dim, p.dim);
  // scaled(v) for a dimension with max > min; constant dimensions map to 0.
  auto scaled = [&](int j, double v) -> double {
    if (j >= p.dim) return 0.0;  // never seen in training: constant rule
    const double lo = p.min[static_cast<std::size_t>(j)];
    const double hi = p.max[static_cast<std::size_t>(j)];
    if (!(hi > lo)) return 0.0;
    return -1.0 + 2.0 * (v - lo) / (hi - lo);
  };

  // Dimensions where an absent (zero) value maps to a nonzero output must be
  // materialized.
  std::vector<std::pair<int, double>> zero_maps;
  for (int j = 0; j < p.dim; ++j) {
    const double t0 = scaled(j, 0.0);
    if (t0 != 0.0) zero_maps.emplace_back(j, t0);
  }

  Dataset out;
  out.dim = out_dim;
  out.n_pos = ds.n_pos;
  out.n_neg = ds.n_neg;
  out.examples.reserve(ds.size());
  for (const auto& ex : ds.examples) {
    Example t;
    t.label = ex.label;
    t.features.dim = out_dim;
    auto zit = zero_maps.begin();
    for (const auto& e : ex.features.entries) {
      for (; zit != zero_maps.end() && zit->first < e.index; ++zit) {
        t.features.entries.push_back({zit->first, zit->second});
      }
      if (zit != zero_maps.end() && zit->first == e.index) ++zit;
      const double v = scaled(e.index, e.value);
      if (v != 0.0) t.features.entries.push_back({e.index, v});
    }
    for (; zit != zero_maps.end(); ++zit) {
      t.features.entries.push_back({zit->first, zit->second});
    }
    out.examples.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::pair<Dataset, ScalingParams> standardize(const Dataset& ds) {
  ScalingParams p;
  p.dim = ds.dim;
  p.min.assign(static_cast<std::size_t>(ds.dim), std::numeric_limits<double>::infinity());
  p.max.assign(static_cast<std::size_t>(ds.dim), -std::numeric_limits<double>::infinity());
  std::vector<long> present(static_cast<std::size_t>(ds.dim), 0);
  for (const auto& ex : ds.examples) {
    for (const auto& e : ex.features.entries) {
      auto j = static_cast<std::size_t>(e.index);
      p.min[j] = std::min(p.min[j], e.value);
      p.max[j] = std::max(p.max[j], e.value);
      ++present[j];
    }
  }
  const long n = static_cast<long>(ds.size());
  for (std::size_t j = 0; j < present.size(); ++j) {
    if (present[j] == 0) {
      p.min[j] = p.max[j] = 0.0;
    } else if (present[j] < n) {
      p.min[j] = std::min(p.min[j], 0.0);
      p.max[j] = std::max(p.max[j], 0.0);
    }
  }
  return {transform_with(ds, p), std::move(p)};
}

Dataset apply_scaling(const Dataset& ds, const ScalingParams& params) {
  if (params.dim != static_cast<int>(params.min.size()) ||
      params.dim != static_cast<int>(params.max.size())) {
    throw ValidationError("scaling params arrays do not match dim");
  }
  return transform_with(ds, params);
}

std::string ScalingParams::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["min"] = min;
  j["max"] = max;
  return j.dump();
}

ScalingParams ScalingParams::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ScalingParams p;
  p.dim = j.at("dim").get<int>();
  p.min = j.at("min").get<std::vector<double>>();
  p.max = j.at("max").get<std::vector<double>>();
  return p;
}

}  // namespace ubauc
