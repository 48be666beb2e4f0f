#pragma once

#include <vector>

#include "nonstat/bounds.hpp"
#include "nonstat/erm.hpp"

namespace nonstat {

// Constants of the risk and selection bounds, evaluated with
// script-V = V_(n)/(n-1) and delta = M K_{n-1}(rho).
struct RiskConstants {
  double c0 = 0.0;  // L(1+rho) [G_eps(0)/(1-rho) + G_X1(0)]
  double c1 = 0.0;  // 4(1+rho) L sqrt(V)
  double c2 = 0.0;  // 2(1+rho) L sqrt(V) + 2 delta
  double c3 = 0.0;  // 3[G_eps(0)+G_X1(0)]/(1-rho) + V/(2 delta)
  double v_script = 0.0;
  double delta = 0.0;
  bool c3_degenerate = false;  // delta == 0: the V/(2 delta) term is dropped
};

RiskConstants risk_constants(const ChainModel& model, const LossSpec& loss,
                             const BernsteinInputs& inputs);

// sample-size condition n >= 1 + 4 delta^2 T H(F, 1/(L n)) / V
bool sample_size_ok(int n, int t_period, const PredictorClass& cls,
                    const LossSpec& loss, const BernsteinInputs& inputs);

struct FitReport {
  struct Row {
    int t_period = 1;
    double empirical_risk = 0.0;
    double penalty = 0.0;
    std::vector<std::vector<double>> erm_parameters;
  };
  std::vector<Row> per_t;  // T = 1..T_max
  int selected_t_penalized = 1;
  std::vector<std::pair<double, int>> slope_trace;  // (c, T_hat(c))
  double c_hat = 0.0;
  int selected_t_slope = 1;
};

// Penalized selection: argmin_T [ r_n(erm_T) + (C1/2) sqrt(T H / (n-1)) ],
// ties toward smaller T. Net resolution eps = 1/(L n) unless overridden.
FitReport select_period_penalized(const Trajectory& traj, int t_max,
                                  const PredictorClass& cls, const LossSpec& loss,
                                  double c1, double net_epsilon = 0.0);

struct SlopeResult {
  double c_hat = 0.0;
  int selected_t = 1;
  std::vector<std::pair<double, int>> trace;  // T_hat at each grid c
};

// T_hat(c) = argmin_T [ r(T) + c sqrt(T) ], ties toward smaller T.
// c_hat = midpoint of the first grid cell maximizing the drop of
// sqrt(T_hat); the selection is T_hat(2 c_hat).
SlopeResult slope_heuristic(std::span<const double> per_t_risks, double c_min,
                            double c_max, double step);

// defaults: c in [0, 2 * (max risk - min risk)], 400 steps
SlopeResult slope_heuristic(std::span<const double> per_t_risks);

// T_hat(c) for a single penalty constant
int argmin_penalized(std::span<const double> per_t_risks, double c);

}  // namespace nonstat
