#include "nonstat/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nonstat {

double empirical_moment(std::span<const double> samples, int k) {
  double s = 0.0;
  for (double x : samples) s += std::pow(x, k);
  return s / static_cast<double>(samples.size());
}

MomentFit fit_moment_constants(std::span<const double> samples_g, int k_max) {
  if (samples_g.empty()) throw std::invalid_argument("fit_moment_constants: empty samples");
  if (k_max < 2) throw std::invalid_argument("fit_moment_constants: k_max must be >= 2");
  for (double x : samples_g)
    if (x < 0.0) throw std::invalid_argument("fit_moment_constants: negative sample");

  const double gmax = *std::max_element(samples_g.begin(), samples_g.end());

  std::vector<double> mu(static_cast<std::size_t>(k_max + 1), 0.0);
  for (int k = 2; k <= k_max; ++k) mu[static_cast<std::size_t>(k)] = empirical_moment(samples_g, k);

  // degenerate all-zero sample: every moment vanishes, any m is feasible
  if (gmax == 0.0) return {0.0, 1e-12, k_max};

  const int grid_points = 512;
  const double m_lo = gmax / static_cast<double>(k_max);
  const double m_hi = gmax;
  const double ratio = std::pow(m_hi / m_lo, 1.0 / static_cast<double>(grid_points - 1));

  double best_v = std::numeric_limits<double>::infinity();
  double best_m = m_lo;
  double m = m_lo;
  for (int g = 0; g < grid_points; ++g, m *= ratio) {
    double v = 0.0;
    double kfact = 2.0;  // k!
    double mpow = 1.0;   // m^(k-2)
    for (int k = 2; k <= k_max; ++k) {
      if (k > 2) {
        kfact *= k;
        mpow *= m;
      }
      v = std::max(v, 2.0 * mu[static_cast<std::size_t>(k)] / (kfact * mpow));
    }
    // strict < with m ascending keeps the smallest m among ties
    if (v < best_v) {
      best_v = v;
      best_m = m;
    }
  }
  return {best_v, best_m, k_max};
}

}  // namespace nonstat
