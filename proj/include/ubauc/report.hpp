#pragma once

#include <string>
#include <vector>

namespace ubauc {

// Per-pass training trajectory. For the batch solver a "pass" is one outer
// iteration; entry 0 is the state before the first pass.
struct TrainReport {
  std::string algo;
  std::vector<double> objective;
  std::vector<double> train_auc_risk;
  std::vector<double> pass_seconds;
  long passes = 0;
  bool converged = false;
  bool inner_cap_hit = false;  // batch: some w-subproblem hit its iteration cap
  bool ties_seen = false;      // tied scores were tie-broken in the metrics

  double final_objective() const { return objective.empty() ? 0.0 : objective.back(); }
};

}  // namespace ubauc
