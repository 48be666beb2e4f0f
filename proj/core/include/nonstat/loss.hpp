#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace nonstat {

enum class LossKind { absolute, quantile, huber, squared_bounded };

// Non-negative L-Lipschitz loss on the prediction residual. Multivariate
// residuals are reduced through the euclidean norm (quantile is scalar-only).
struct LossSpec {
  LossKind kind = LossKind::absolute;
  double tau = 0.5;          // quantile level
  double kappa = 1.0;        // huber threshold
  double range_bound = 1.0;  // B for the bounded squared loss

  double lipschitz() const {
    switch (kind) {
      case LossKind::absolute: return 1.0;
      case LossKind::quantile: return std::max(tau, 1.0 - tau);
      case LossKind::huber: return kappa;
      case LossKind::squared_bounded: return 2.0 * range_bound;
    }
    return 1.0;
  }

  void validate() const {
    switch (kind) {
      case LossKind::absolute: break;
      case LossKind::quantile:
        if (!(tau > 0.0 && tau < 1.0))
          throw std::invalid_argument("quantile tau must lie in (0,1)");
        break;
      case LossKind::huber:
        if (!(kappa > 0.0)) throw std::invalid_argument("huber kappa must be > 0");
        break;
      case LossKind::squared_bounded:
        if (!(range_bound > 0.0))
          throw std::invalid_argument("squared loss range bound must be > 0");
        break;
    }
  }

  double eval(double u) const {
    switch (kind) {
      case LossKind::absolute: return std::abs(u);
      case LossKind::quantile: return u >= 0.0 ? tau * u : (tau - 1.0) * u;
      case LossKind::huber: {
        const double a = std::abs(u);
        return a <= kappa ? 0.5 * u * u : kappa * (a - 0.5 * kappa);
      }
      case LossKind::squared_bounded: return u * u;
    }
    return 0.0;
  }

  double eval(std::span<const double> residual) const {
    if (residual.size() == 1) return eval(residual[0]);
    if (kind == LossKind::quantile)
      throw std::invalid_argument("quantile loss is scalar-only");
    double r2 = 0.0;
    for (double v : residual) r2 += v * v;
    const double r = std::sqrt(r2);
    return kind == LossKind::squared_bounded ? r2 : eval(r);
  }
};

}  // namespace nonstat
