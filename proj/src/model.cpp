#include "ubauc/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ubauc/errors.hpp"

namespace ubauc {

double predict_score(const LinearModel& model, const SparseVector& x) {
  if (x.dim > model.dim()) {
    throw ValidationError("example dim exceeds model dim");
  }
  return x.dot(model.weights);
}

std::vector<ScoredSample> score_dataset(const LinearModel& model, const Dataset& ds) {
  std::vector<ScoredSample> out;
  out.reserve(ds.size());
  for (const auto& ex : ds.examples) {
    out.push_back({predict_score(model, ex.features), ex.label});
  }
  return out;
}

std::string model_to_json(const LinearModel& model) {
  nlohmann::ordered_json j;
  j["dim"] = model.dim();
  j["weights"] = model.weights;
  if (model.threshold) j["lambda"] = *model.threshold;
  else j["lambda"] = nullptr;
  return j.dump();
}

LinearModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  LinearModel m;
  m.weights = j.at("weights").get<std::vector<double>>();
  if (j.at("dim").get<int>() != m.dim()) {
    throw ValidationError("model file dim does not match weights length");
  }
  if (!j.at("lambda").is_null()) m.threshold = j.at("lambda").get<double>();
  return m;
}

void save_model(const LinearModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open file for writing: " + path);
  out << model_to_json(model) << '\n';
}

LinearModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace ubauc
