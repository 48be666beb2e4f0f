#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nonstat/bounds.hpp"
#include "nonstat/chain.hpp"
#include "nonstat/loss.hpp"
#include "nonstat/selection.hpp"

namespace nonstat {

enum class TailFunctional { coordinate_sum, sum_of_norms };
enum class BoundFamily { bernstein, cramer, mcdiarmid };

struct TailExperiment {
  ChainModel model;
  TailFunctional functional = TailFunctional::coordinate_sum;
  int n = 100;
  int replicates = 100000;       // >= 1e4
  std::vector<double> x_grid;    // sorted ascending, all >= 0
  BoundFamily family = BoundFamily::bernstein;
  BernsteinInputs bernstein;
  CramerInputs cramer;
  McDiarmidInputs mcdiarmid;
  std::uint64_t base_seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct ValidationRow {
  double x = 0.0;
  double empirical_upper_freq = 0.0;  // P(S_n >= x)
  double empirical_lower_freq = 0.0;  // P(-S_n >= x)
  double bound_refined = 0.0;         // bernstein refined / cramer refined / rio
  double bound_simple = 0.0;          // bernstein simple / cramer loose / mcdiarmid
  double mc_stderr = 0.0;
  bool pass = true;  // max(freqs) <= bound_refined + 3 stderr
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double centering_estimate = 0.0;  // E f from an independent batch
  double centering_stderr = 0.0;
  bool all_pass = true;
};

// Empirical tail frequencies of S_n = f(X_1..X_n) - E f against the selected
// theoretical bound. Centering comes from an independent replicate batch of
// equal size. Deterministic given base_seed, independent of thread count.
ValidationReport run_tail_experiment(const TailExperiment& exp);

struct MomentLemmaRow {
  int n = 1;
  double estimate = 0.0;  // MC mean of ||X_n||
  double mc_stderr = 0.0;
  double bound = 0.0;
  bool pass = true;  // estimate <= bound + 3 stderr
};

struct MomentLemmaReport {
  std::vector<MomentLemmaRow> rows;
  bool all_pass = true;
};

MomentLemmaReport check_moment_lemma(const ChainModel& model,
                                     const std::vector<int>& n_list, int replicates,
                                     std::uint64_t base_seed, int threads = 0);

struct RiskStationarityReport {
  double r_n = 0.0;
  double r_n_stderr = 0.0;
  double r_tp1 = 0.0;
  double r_tp1_stderr = 0.0;
  double bound = 0.0;  // C0 (T+1)/(n-1)
  bool periodic_law_certified = true;
  bool pass = true;
};

// MC check of |R_n - R_{T+1}| <= C0 (T+1)/(n-1) on a chain warmed into its
// periodic regime (burn-in restarted at a phase boundary). C0 is evaluated
// with the stationary bound G_eps(0)/(1-rho) in place of G_X1(0).
RiskStationarityReport check_risk_stationarity(
    const ChainModel& model, int t_period, const LossSpec& loss,
    const std::vector<std::vector<double>>& predictors, int n, int replicates,
    std::uint64_t base_seed, int threads = 0);

struct StudyResult {
  Trajectory traj;
  std::vector<double> acf;  // lags 0..40
  FitReport fit;            // per-T risks, penalized + slope selections
  int selected_t = 0;       // slope-heuristic selection
  double c_hat = 0.0;
  double boundary_enter_4 = 0.0;  // first c with T_hat(c) = 4 (fine scan)
  double boundary_enter_1 = 0.0;  // first c with T_hat(c) = 1
};

// Period-4 AR(1) with coefficients (0.8, 0.5, 0.9, -0.7), standard gaussian
// noise and init, 400 points, T_max = 20, absolute loss, net eps = 1/n.
StudyResult reproduce_simulation_study(std::uint64_t seed);

ChainModel study_model();

// deterministic chunked parallel-for; chunk boundaries are independent of
// the worker count so reductions over chunk results reproduce bit-for-bit
void parallel_chunks(std::int64_t count, int threads,
                     const std::function<void(std::int64_t begin, std::int64_t end)>& fn);

int resolve_threads(int requested);

}  // namespace nonstat
