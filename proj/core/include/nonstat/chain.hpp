#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nonstat/noise.hpp"
#include "nonstat/rng.hpp"

namespace nonstat {

enum class Metric { abs, euclidean };

enum class UpdateKind { ar1, var1, periodic_functional };

// A state-update map for one phase of a periodic_functional model.
// Must be Lipschitz in x with constant <= rho; noise enters additively.
using PhaseMap = std::function<double(double)>;

// Nonstationary one-step contracting chain X_t = F_t(X_{t-1}, eps_t).
// Coefficient / matrix sequences are cycled: the update producing X_t
// (t >= 2) uses entry (t-1) mod period, so coeffs = (a_1..a_T) realizes
// X_t = a_{t[T]} X_{t-1} + eps_t.
struct ChainModel {
  UpdateKind kind = UpdateKind::ar1;
  std::vector<double> coeffs;               // ar1: per-phase scalars
  std::vector<std::vector<double>> mats;    // var1: per-phase d*d row-major
  std::vector<PhaseMap> phase_maps;         // periodic_functional
  double rho = 0.0;                         // certified contraction coefficient
  double noise_c = 1.0;                     // constant of the noise-Lipschitz condition
  DistSpec noise;
  DistSpec init;
  Metric metric = Metric::abs;
  std::string id;

  int dimension() const { return noise.dimension; }
  std::size_t period() const;

  // evaluate F_t: out = map(x) + eps   (t >= 2, 1-based chain time)
  void apply(std::int64_t t, std::span<const double> x,
             std::span<const double> eps, std::span<double> out) const;

  // drift only, without the additive noise term
  void apply_map(std::int64_t t, std::span<const double> x,
                 std::span<double> out) const;

  // throws std::invalid_argument if any model invariant fails:
  // rho in [0, 1-1e-9], sup_t |a_t| <= rho, sup_t ||A_t||_op <= rho,
  // additive noise => noise_c == 1, distributions well formed.
  void validate() const;
};

// operator norm by power iteration on A^T A; rel tol 1e-10, 1000 iters
double operator_norm(std::span<const double> mat_rowmajor, int d);

struct Trajectory {
  int n = 0;
  int dim = 1;
  std::vector<double> data;  // n * dim, row-major
  std::string model_id;
  std::uint64_t seed = 0;
  std::uint64_t replicate_index = 0;

  double at(int t, int i = 0) const {  // t is 0-based here
    return data[static_cast<std::size_t>(t) * static_cast<std::size_t>(dim) +
                static_cast<std::size_t>(i)];
  }
  std::span<const double> state(int t) const {
    return {data.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

Trajectory simulate(const ChainModel& model, int n, std::uint64_t seed,
                    std::uint64_t replicate_index = 0);

// G_eps(y) = C * E delta(y, eps')
double g_eps(const ChainModel& model, std::span<const double> y);
double g_eps(const ChainModel& model, double y);

// G_X1(x) = E d(x, X1')
double g_x1(const ChainModel& model, std::span<const double> x);
double g_x1(const ChainModel& model, double x);

// E||X_n|| <= G_eps(0)/(1-rho) + rho^(n-1) G_X1(0); additive-noise models only
double expected_norm_bound(const ChainModel& model, int n);

}  // namespace nonstat
