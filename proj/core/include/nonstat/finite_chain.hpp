#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nonstat {

// A scalar chain with finite initial and noise supports, small enough to
// enumerate every outcome exactly. Horizon n is capped at 12 and the
// outcome count |init| * |noise|^(n-1) at 1e6.
struct FiniteChain {
  std::vector<std::pair<double, double>> init_support;   // (state, prob)
  std::vector<std::pair<double, double>> noise_support;  // (value, prob)
  std::function<double(int t, double x, double e)> update;  // t >= 2
  int n = 2;
  double rho = 0.0;
  double noise_c = 1.0;  // constant of condition (3); checked in point 3
};

// Separately-Lipschitz functionals used to exercise the decomposition.
using Functional = std::function<double(std::span<const double>)>;
Functional functional_sum();        // x_1 + ... + x_n
Functional functional_sum_abs();    // |x_1| + ... + |x_n|
Functional functional_max();        // max_i x_i

// Exact per-outcome conditional expectations g_k, increments d_k and S_n.
// Level k holds one value per distinct length-k history, in mixed-radix
// order (init index major, then eps_2 ... eps_k with eps_k fastest).
struct DecompositionTable {
  int n = 0;
  std::size_t outcome_count = 0;
  double expectation = 0.0;                 // E f = g_0
  std::vector<std::vector<double>> states;  // states[k-1]: level-k X_k values
  std::vector<std::vector<double>> g;       // g[k-1]: level-k g_k values
  std::vector<std::vector<double>> d;       // d[k-1]: level-k d_k values
  std::vector<double> prob;                 // per full outcome
  std::vector<double> s_n;                  // per full outcome

  std::size_t level_size(int k) const { return g[static_cast<std::size_t>(k - 1)].size(); }
};

DecompositionTable enumerate_decomposition(const FiniteChain& chain, const Functional& f);

struct Lemma1Report {
  bool ok = true;
  std::size_t violations = 0;
  // max over checked pairs/outcomes of (lhs - rhs); <= 0 when the
  // inequality holds, with tolerance 1e-9 on the pass flag
  std::vector<double> point1_slack_per_t;  // index t-1
  std::vector<double> point2_slack_per_t;  // index t-1 (t = 1 uses G_X1)
  std::vector<double> point3_slack_per_t;  // index t-2 for t in 2..n
  double max_martingale_residual = 0.0;    // max |E[d_k | F_{k-1}]|
  double max_telescope_residual = 0.0;     // max |S_n - sum d_k|
  std::string summary() const;
};

// Verifies the three decomposition inequalities on every enumerated
// outcome; point 1 over pairs of reachable histories (subsampled
// deterministically past 512 histories per level).
Lemma1Report check_lemma1(const FiniteChain& chain, const Functional& f);

// Randomized chain for verification sweeps: horizon in [2, max_horizon],
// support sizes 2..3, random affine updates x -> a_t x + b_t + e with
// |a_t| <= rho and rho uniform in [0, 0.95].
FiniteChain random_finite_chain(std::uint64_t seed, int max_horizon = 6);

}  // namespace nonstat
