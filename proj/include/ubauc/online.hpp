#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ubauc/dataset.hpp"
#include "ubauc/model.hpp"
#include "ubauc/report.hpp"
#include "ubauc/surrogate.hpp"

namespace ubauc {

enum class StepSchedule { inv_sqrt };
enum class ShuffleMode { per_epoch, none, with_replacement };

struct OnlineConfig {
  Objective objective;
  double eta0 = 0.1;  // step size eta_t = eta0 / sqrt(t); 0 is a documented no-op
  StepSchedule schedule = StepSchedule::inv_sqrt;
  int epochs = 1;
  std::uint64_t seed = 0;
  ShuffleMode shuffle = ShuffleMode::per_epoch;

  void validate() const;
};

// Mutable state of the streaming solver: the model plus O(1) bookkeeping.
// The weight vector is stored as scale * v so the gamma-shrink of every step
// multiplies the scale instead of touching all d coordinates; v is
// re-materialized only when the scale drifts out of a safe range. Single
// owner: one updater at a time, snapshots may be copied out for reading.
class OnlineState {
 public:
  explicit OnlineState(int dim, double lambda0 = 0.0);
  explicit OnlineState(const LinearModel& init);

  long long step_count() const { return steps_; }
  double threshold() const { return lambda_; }
  // Exponentially smoothed per-example loss (hinge + least-squares terms),
  // diagnostics only.
  double running_objective() const { return run_obj_; }
  int dim() const { return static_cast<int>(v_.size()); }

  double score(const SparseVector& x) const;
  LinearModel snapshot() const;

  // Bytes of auxiliary storage owned by the state (model included). Used by
  // the storage-accounting tests and cmd_bench; independent of the number of
  // examples seen.
  std::size_t aux_bytes() const;

 private:
  friend void sgd_step(OnlineState&, const Example&, const OnlineConfig&);
  void densify();

  std::vector<double> v_;
  double scale_ = 1.0;
  double lambda_ = 0.0;
  long long steps_ = 0;
  double run_obj_ = 0.0;
};

// One stochastic subgradient step on the example:
//   w <- w - eta_t [ gamma w + beta (w.x) x - (beta + 1{y(lambda - w.x) > 0}) y x ]
//   lambda <- lambda - eta_t y 1{y(lambda - w.x) > 0}
// with eta_t = eta0/sqrt(t). Touches only nnz(x) coordinates plus the O(1)
// scale update. Throws DivergenceError (carrying the last state that passed
// the finiteness checks) when the score or threshold stops being finite.
void sgd_step(OnlineState& state, const Example& ex, const OnlineConfig& cfg);

// epochs x N steps over a seeded shuffle (or stream order / with-replacement
// draws). Records (objective, train AUC risk, seconds) per pass. Deterministic
// per seed.
std::pair<LinearModel, TrainReport> train_online(const Dataset& ds, const OnlineConfig& cfg);

// One sgd_step per pulled example; nothing is retained after its step. The
// stream callable yields examples until it returns nullopt.
void consume_stream(OnlineState& state, const std::function<std::optional<Example>()>& next,
                    const OnlineConfig& cfg);

}  // namespace ubauc
