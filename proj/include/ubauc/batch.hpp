#pragma once

#include <utility>
#include <vector>

#include "ubauc/dataset.hpp"
#include "ubauc/model.hpp"
#include "ubauc/report.hpp"
#include "ubauc/surrogate.hpp"

namespace ubauc {

struct BatchConfig {
  Objective objective;
  int max_outer_iters = 100;
  double outer_tol = 1e-7;  // relative objective change between outer iterations
  double inner_tol = 1e-8;
  int inner_max_iters = 500;

  void validate() const;
};

// Approximately minimizes the w-block
//   sum_i [y_i(lambda - w.x_i)]_+ + (beta/2) sum_i (1 - y_i w.x_i)^2 + (gamma/2)||w||^2
// with Armijo-backtracked subgradient descent from w0. Returns the best
// iterate seen, so the result never scores worse than w0. cap_hit is set when
// the iteration cap stopped the search.
//
// The hinge block has an equivalent constrained-QP form with slack variables,
//   min_{w,t} sum_i t_i + smooth terms   s.t. t_i >= y_i(lambda - w.x_i), t_i >= 0,
// suitable for interior-point solvers at low dimension. That route builds a
// Hessian, so it is documented here but not implemented: the first-order path
// also handles high-dimensional sparse data.
std::vector<double> w_subproblem(const Dataset& ds, double lambda, const Objective& obj,
                                 std::vector<double> w0, double tol, int max_iters,
                                 bool* cap_hit = nullptr);

// Block coordinate descent: alternates the w-subproblem with the exact
// lambda-step (midpoint of the N--th and (N-+1)-th smallest scores). The
// objective is checked to be non-increasing across outer iterations.
std::pair<LinearModel, TrainReport> train_batch(const Dataset& ds, const BatchConfig& cfg,
                                                const LinearModel* init = nullptr);

}  // namespace ubauc
