#include "nonstat/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nonstat/chain.hpp"

namespace nonstat {

void PredictorClass::validate() const {
  if (!(rho_max >= 0.0 && rho_max < 1.0))
    throw std::invalid_argument("PredictorClass: rho_max must lie in [0, 1)");
  if (kind == PredictorKind::var1 && dim < 1)
    throw std::invalid_argument("PredictorClass: dim must be >= 1");
}

void PredictorClass::predict(std::span<const double> params, std::span<const double> x,
                             std::span<double> out) const {
  if (kind == PredictorKind::scalar_ar1) {
    out[0] = params[0] * x[0];
    return;
  }
  for (int i = 0; i < dim; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j)
      s += params[static_cast<std::size_t>(i * dim + j)] * x[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
}

CoveringNet build_net(const PredictorClass& cls, double epsilon, std::size_t member_cap) {
  cls.validate();
  if (!(epsilon > 0.0)) throw std::invalid_argument("build_net: epsilon must be > 0");
  CoveringNet net;
  net.epsilon = epsilon;
  net.param_count = cls.param_count();

  if (cls.kind == PredictorKind::scalar_ar1) {
    const long imax = static_cast<long>(std::floor(cls.rho_max / epsilon));
    if (static_cast<std::size_t>(2 * imax + 1) > member_cap)
      throw std::invalid_argument("build_net: net size exceeds cap");
    for (long i = -imax; i <= imax; ++i)
      net.params.push_back(static_cast<double>(i) * epsilon);
    return net;
  }

  const int d = cls.dim;
  const double step = epsilon / std::sqrt(static_cast<double>(d));
  const long imax = static_cast<long>(std::floor(cls.rho_max / step));
  const std::size_t per_entry = static_cast<std::size_t>(2 * imax + 1);
  double total = 1.0;
  for (int e = 0; e < d * d; ++e) {
    total *= static_cast<double>(per_entry);
    if (total > static_cast<double>(member_cap) * 64.0)
      throw std::invalid_argument("build_net: net size exceeds cap");
  }

  std::vector<double> entry(static_cast<std::size_t>(d * d), 0.0);
  std::vector<long> digits(static_cast<std::size_t>(d * d), -imax);
  std::size_t kept = 0;
  while (true) {
    for (int e = 0; e < d * d; ++e)
      entry[static_cast<std::size_t>(e)] = static_cast<double>(digits[static_cast<std::size_t>(e)]) * step;
    if (operator_norm(entry, d) <= cls.rho_max + 1e-12) {
      net.params.insert(net.params.end(), entry.begin(), entry.end());
      if (++kept > member_cap) throw std::invalid_argument("build_net: net size exceeds cap");
    }
    int e = d * d - 1;
    while (e >= 0 && digits[static_cast<std::size_t>(e)] == imax) {
      digits[static_cast<std::size_t>(e)] = -imax;
      --e;
    }
    if (e < 0) break;
    ++digits[static_cast<std::size_t>(e)];
  }
  return net;
}

double entropy(const PredictorClass& cls, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("entropy: epsilon must be > 0");
  double log_n;
  if (cls.kind == PredictorKind::scalar_ar1) {
    log_n = std::log(1.0 + 2.0 / epsilon);
  } else {
    const double d = static_cast<double>(cls.dim);
    log_n = d * std::log(1.0 + 2.0 * std::sqrt(d) / epsilon);
  }
  return std::max(1.0, log_n);
}

}  // namespace nonstat
