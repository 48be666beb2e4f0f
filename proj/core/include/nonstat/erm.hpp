#pragma once

#include <vector>

#include "nonstat/chain.hpp"
#include "nonstat/loss.hpp"
#include "nonstat/predictor.hpp"

namespace nonstat {

// r_n(f_{1:T}) = (1/(n-1)) sum_{i=2}^n loss(X_i - f_{i[T]}(X_{i-1})).
// predictors: T flattened parameter vectors, one per phase.
double empirical_risk(const Trajectory& traj, const PredictorClass& cls,
                      const std::vector<std::vector<double>>& predictors,
                      const LossSpec& loss);

struct ErmResult {
  std::vector<std::vector<double>> params;  // one per phase, 1..T
  double risk = 0.0;
  bool short_sample = false;  // n < T + 1
};

// Exact minimizer over the net's T-fold product. The risk decomposes over
// phases, so each phase is scanned independently; ties break toward the
// lexicographically smallest parameter vector.
ErmResult erm_fit(const Trajectory& traj, int t_period, const CoveringNet& net,
                  const PredictorClass& cls, const LossSpec& loss);

}  // namespace nonstat
