#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nonstat {

enum class PredictorKind { scalar_ar1, var1 };

// Family of rho-Lipschitz linear predictors: scalar f(x) = a x with
// |a| <= rho_max, or matrix f(x) = A x with ||A||_op <= rho_max.
struct PredictorClass {
  PredictorKind kind = PredictorKind::scalar_ar1;
  int dim = 1;
  double rho_max = 0.9;

  int param_count() const { return kind == PredictorKind::scalar_ar1 ? 1 : dim * dim; }
  void validate() const;
  void predict(std::span<const double> params, std::span<const double> x,
               std::span<double> out) const;
};

struct CoveringNet {
  double epsilon = 0.0;
  int param_count = 1;
  // flattened members, param_count values each
  std::vector<double> params;

  std::size_t cardinality() const {
    return params.size() / static_cast<std::size_t>(param_count);
  }
  std::span<const double> member(std::size_t i) const {
    return {params.data() + i * static_cast<std::size_t>(param_count),
            static_cast<std::size_t>(param_count)};
  }
};

// Grid nets: scalar coefficients { i eps : |i| <= floor(rho_max/eps) };
// var1 matrices with entries in (eps/sqrt(d)) { 0, +-1, ..., +-floor(rho_max sqrt(d)/eps) }
// filtered to operator norm <= rho_max.
CoveringNet build_net(const PredictorClass& cls, double epsilon,
                      std::size_t member_cap = 10000000);

// H(F, eps) = max(1, log of the analytic covering-number bound)
double entropy(const PredictorClass& cls, double epsilon);

// i[T] in 1..T with i - i[T] divisible by T
inline int phase_index(std::int64_t i, int t_period) {
  return static_cast<int>((i - 1) % t_period) + 1;
}

}  // namespace nonstat
