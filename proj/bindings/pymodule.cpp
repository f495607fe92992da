// Python bindings for the main operations: dataset handling, the AUC risk
// forms, the top-k identity, the surrogate, both solvers, and the evaluation
// protocol.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ubauc/ubauc.hpp"

namespace py = pybind11;
using namespace ubauc;

namespace {

std::vector<ScoredSample> zip_scored(const std::vector<double>& scores,
                                     const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw ValidationError("scores and labels must have the same length");
  }
  std::vector<ScoredSample> out(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) out[i] = {scores[i], labels[i]};
  return out;
}

TiePolicy tie_policy(const std::string& name) {
  if (name == "half") return TiePolicy::half;
  if (name == "strict") return TiePolicy::strict;
  throw ValidationError("tie policy must be 'half' or 'strict'");
}

ShuffleMode shuffle_mode(const std::string& name) {
  if (name == "per_epoch") return ShuffleMode::per_epoch;
  if (name == "none") return ShuffleMode::none;
  if (name == "with_replacement") return ShuffleMode::with_replacement;
  throw ValidationError("shuffle must be per_epoch, none, or with_replacement");
}

Dataset dataset_from_dense(const std::vector<std::vector<double>>& rows,
                           const std::vector<int>& labels) {
  if (rows.size() != labels.size()) throw ValidationError("rows and labels length mismatch");
  int dim = 0;
  for (const auto& r : rows) dim = std::max(dim, static_cast<int>(r.size()));
  std::vector<Example> examples;
  examples.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Example ex;
    ex.label = labels[i];
    ex.features.dim = dim;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] != 0.0) ex.features.entries.push_back({static_cast<int>(j), rows[i][j]});
    }
    examples.push_back(std::move(ex));
  }
  return Dataset::from_examples(std::move(examples), dim);
}

py::dict report_dict(const TrainReport& r) {
  py::dict d;
  d["algo"] = r.algo;
  d["objective"] = r.objective;
  d["train_auc_risk"] = r.train_auc_risk;
  d["pass_seconds"] = r.pass_seconds;
  d["passes"] = r.passes;
  d["converged"] = r.converged;
  d["inner_cap_hit"] = r.inner_cap_hit;
  d["ties_seen"] = r.ties_seen;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AUC-risk optimization via a univariate surrogate loss";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseFormatError", PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  py::class_<Dataset>(m, "Dataset")
      .def_property_readonly("n", [](const Dataset& ds) { return ds.size(); })
      .def_property_readonly("dim", [](const Dataset& ds) { return ds.dim; })
      .def_property_readonly("n_pos", [](const Dataset& ds) { return ds.n_pos; })
      .def_property_readonly("n_neg", [](const Dataset& ds) { return ds.n_neg; })
      .def_property_readonly("labels",
                             [](const Dataset& ds) {
                               std::vector<int> out;
                               out.reserve(ds.size());
                               for (const auto& ex : ds.examples) out.push_back(ex.label);
                               return out;
                             })
      .def("__len__", [](const Dataset& ds) { return ds.size(); })
      .def("__repr__", [](const Dataset& ds) {
        return "<ubauc.Dataset n=" + std::to_string(ds.size()) +
               " dim=" + std::to_string(ds.dim) + ">";
      });

  m.def("load_libsvm", &load_libsvm, py::arg("path"),
        "Read a LIBSVM text file (.gz transparently decompressed).");
  m.def(
      "parse_libsvm",
      [](const std::string& text) {
        std::istringstream in(text);
        return parse_libsvm(in);
      },
      py::arg("text"));
  m.def("serialize_libsvm",
        static_cast<std::string (*)(const Dataset&)>(&serialize_libsvm), py::arg("dataset"));
  m.def("dataset_from_dense", &dataset_from_dense, py::arg("rows"), py::arg("labels"),
        "Build a dataset from dense rows (zeros are stored sparsely).");
  m.def("binarize_by_class_partition", &binarize_by_class_partition, py::arg("dataset"),
        py::arg("seed"));
  m.def("subsample_split", &subsample_split, py::arg("dataset"), py::arg("fraction"),
        py::arg("seed"));
  m.def(
      "standardize",
      [](const Dataset& ds) {
        auto [scaled, params] = standardize(ds);
        return py::make_tuple(scaled, params.to_json());
      },
      py::arg("dataset"), "Fit the [-1,1] scaling; returns (dataset, params_json).");
  m.def(
      "apply_scaling",
      [](const Dataset& ds, const std::string& params_json) {
        return apply_scaling(ds, ScalingParams::from_json(params_json));
      },
      py::arg("dataset"), py::arg("params_json"));
  m.def("make_gaussian_2class", &make_gaussian_2class, py::arg("n"), py::arg("dim"),
        py::arg("separation"), py::arg("sigma"), py::arg("seed"));

  m.def(
      "auc_risk_pairwise",
      [](const std::vector<double>& scores, const std::vector<int>& labels,
         const std::string& policy) {
        return auc_risk_pairwise(zip_scored(scores, labels), tie_policy(policy));
      },
      py::arg("scores"), py::arg("labels"), py::arg("tie_policy") = "half");
  m.def(
      "auc_risk_rank",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        return auc_risk_rank(zip_scored(scores, labels));
      },
      py::arg("scores"), py::arg("labels"));

  m.def("topk_sum_direct",
        [](const std::vector<double>& z, long k) { return topk_sum_direct(z, k); },
        py::arg("z"), py::arg("k"));
  m.def(
      "topk_sum_variational",
      [](const std::vector<double>& z, long k) {
        const TopKResult r = topk_sum_variational(z, k);
        py::dict d;
        d["sum"] = r.sum;
        d["lambda_star"] = r.lambda_star;
        d["lambda_lo"] = r.lambda_lo;
        d["lambda_hi"] = r.lambda_hi;
        return d;
      },
      py::arg("z"), py::arg("k"));

  auto surrogate_dict = [](const SurrogateValue& v) {
    py::dict d;
    d["value"] = v.value;
    d["lambda_star"] = v.lambda_star;
    d["form"] = v.form == SurrogateForm::sorted ? "sorted" : "variational";
    return d;
  };
  m.def(
      "surrogate_sorted",
      [surrogate_dict](const std::vector<double>& scores, const std::vector<int>& labels) {
        return surrogate_dict(surrogate_sorted(zip_scored(scores, labels)));
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "surrogate_variational",
      [surrogate_dict](const std::vector<double>& scores, const std::vector<int>& labels) {
        return surrogate_dict(surrogate_variational(zip_scored(scores, labels)));
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "bound_constants",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        const BoundConstants bc = bound_constants(zip_scored(scores, labels));
        return py::make_tuple(bc.alpha_upper, bc.alpha_lower);
      },
      py::arg("scores"), py::arg("labels"));
  m.def(
      "pairwise_surrogate_risk",
      [](const std::vector<double>& scores, const std::vector<int>& labels,
         const std::string& kind) {
        PairwiseLoss loss = PairwiseLoss::hinge;
        if (kind == "squared_hinge") loss = PairwiseLoss::squared_hinge;
        else if (kind == "rank_boost") loss = PairwiseLoss::rank_boost;
        else if (kind != "hinge") throw ValidationError("unknown pairwise loss '" + kind + "'");
        return pairwise_surrogate_risk(zip_scored(scores, labels), loss);
      },
      py::arg("scores"), py::arg("labels"), py::arg("kind") = "hinge");

  py::class_<LinearModel>(m, "LinearModel")
      .def_property_readonly("weights", [](const LinearModel& m_) { return m_.weights; })
      .def_property_readonly("lambda_",
                             [](const LinearModel& m_) -> py::object {
                               if (m_.threshold) return py::float_(*m_.threshold);
                               return py::none();
                             })
      .def_property_readonly("dim", &LinearModel::dim)
      .def("predict",
           [](const LinearModel& m_, const Dataset& ds) {
             std::vector<double> out;
             out.reserve(ds.size());
             for (const auto& ex : ds.examples) out.push_back(predict_score(m_, ex.features));
             return out;
           })
      .def("to_json", &model_to_json)
      .def_static("from_json", &model_from_json)
      .def("__repr__", [](const LinearModel& m_) {
        return "<ubauc.LinearModel dim=" + std::to_string(m_.dim()) + ">";
      });

  m.def(
      "objective_value",
      [](const LinearModel& model, const Dataset& ds, double beta, double gamma) {
        return objective_value(model, ds, Objective{beta, gamma});
      },
      py::arg("model"), py::arg("dataset"), py::arg("beta"), py::arg("gamma"));
  m.def("svm_objective", &svm_objective, py::arg("model"), py::arg("dataset"));

  m.def(
      "train_online",
      [](const Dataset& ds, double beta, double gamma, double eta0, int epochs,
         std::uint64_t seed, const std::string& shuffle) {
        OnlineConfig cfg;
        cfg.objective = {beta, gamma};
        cfg.eta0 = eta0;
        cfg.epochs = epochs;
        cfg.seed = seed;
        cfg.shuffle = shuffle_mode(shuffle);
        auto [model, report] = train_online(ds, cfg);
        return py::make_tuple(model, report_dict(report));
      },
      py::arg("dataset"), py::arg("beta") = 1.0, py::arg("gamma") = 1e-4,
      py::arg("eta0") = 0.1, py::arg("epochs") = 30, py::arg("seed") = 0,
      py::arg("shuffle") = "per_epoch");

  m.def(
      "train_batch",
      [](const Dataset& ds, double beta, double gamma, int max_outer_iters, double outer_tol,
         double inner_tol, int inner_max_iters) {
        BatchConfig cfg;
        cfg.objective = {beta, gamma};
        cfg.max_outer_iters = max_outer_iters;
        cfg.outer_tol = outer_tol;
        cfg.inner_tol = inner_tol;
        cfg.inner_max_iters = inner_max_iters;
        auto [model, report] = train_batch(ds, cfg);
        return py::make_tuple(model, report_dict(report));
      },
      py::arg("dataset"), py::arg("beta") = 1.0, py::arg("gamma") = 1e-4,
      py::arg("max_outer_iters") = 100, py::arg("outer_tol") = 1e-7,
      py::arg("inner_tol") = 1e-8, py::arg("inner_max_iters") = 500);

  m.def(
      "train_pairwise_hinge",
      [](const Dataset& ds, double gamma, int epochs, double step0, std::uint64_t seed) {
        return train_pairwise_hinge_batch(ds, gamma, epochs, step0, seed);
      },
      py::arg("dataset"), py::arg("gamma") = 1e-4, py::arg("epochs") = 200,
      py::arg("step0") = 0.5, py::arg("seed") = 0);

  m.def(
      "run_eval",
      [](const Dataset& train, const Dataset& test, const std::string& algo, double beta,
         double gamma, double eta0, int epochs, int repeats, double fraction,
         std::uint64_t seed, bool scale) {
        RunConfig cfg;
        cfg.algo = algo_from_string(algo);
        cfg.objective = {beta, gamma};
        cfg.eta0 = eta0;
        cfg.epochs = epochs;
        cfg.repeats = repeats;
        cfg.fraction = fraction;
        cfg.seed = seed;
        cfg.scale = scale;
        const EvalReport rep = run_eval(train, test, cfg);
        py::dict d;
        d["auc"] = rep.auc;
        d["auc_std"] = rep.auc_std;
        d["loss_final"] = rep.loss_final;
        d["wall_time_per_pass"] = rep.wall_time_per_pass;
        d["tie_flag"] = rep.tie_flag;
        d["repeats"] = rep.repeats;
        d["config"] = rep.config_echo;
        return d;
      },
      py::arg("train"), py::arg("test"), py::arg("algo") = "online", py::arg("beta") = 1.0,
      py::arg("gamma") = 1e-4, py::arg("eta0") = 0.1, py::arg("epochs") = 30,
      py::arg("repeats") = 25, py::arg("fraction") = 0.8, py::arg("seed") = 0,
      py::arg("scale") = true);

  m.def(
      "verify_quantile_identity",
      [](const std::string& family, double p, long n, std::uint64_t seed) {
        const ScoreDistributionPair d = family == "gaussian"
                                            ? gaussian_score_pair(1.0, 0.0, 1.0, p)
                                            : family == "uniform"
                                                  ? uniform_score_pair(0.0, 1.0, 0.0, 1.0, p)
                                                  : logistic_score_pair(0.5, -0.5, 0.6, p);
        const QuantileIdentityReport r = verify_quantile_identity(d, n, seed);
        py::dict out;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["sigma"] = r.sigma;
        out["holds"] = r.holds;
        return out;
      },
      py::arg("family") = "gaussian", py::arg("p") = 0.5, py::arg("n") = 100000,
      py::arg("seed") = 0);

  m.def(
      "verify_population_bound",
      [](const std::string& family, double p, long n, std::uint64_t seed) {
        const ScoreDistributionPair d = family == "gaussian"
                                            ? gaussian_score_pair(1.0, 0.0, 1.0, p)
                                            : family == "uniform"
                                                  ? uniform_score_pair(0.0, 2.0, -0.5, 1.0, p)
                                                  : logistic_score_pair(0.5, -0.5, 0.6, p);
        const PopulationBoundReport r = verify_population_bound(d, n, seed);
        py::dict out;
        out["lhs"] = r.lhs;
        out["rhs"] = r.rhs;
        out["sigma"] = r.sigma;
        out["holds"] = r.holds;
        return out;
      },
      py::arg("family") = "gaussian", py::arg("p") = 0.5, py::arg("n") = 100000,
      py::arg("seed") = 0);

#ifdef UBAUC_VERSION
  m.attr("__version__") = UBAUC_VERSION;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
