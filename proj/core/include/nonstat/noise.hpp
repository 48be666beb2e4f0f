#pragma once

#include <span>
#include <vector>

#include "nonstat/rng.hpp"

namespace nonstat {

enum class DistFamily { gaussian, uniform, discrete };

// A product distribution on R^dim: i.i.d. coordinates from one of the three
// supported families. Serves both as the noise law and as the law of the
// initial state.
struct DistSpec {
  DistFamily family = DistFamily::gaussian;
  double sigma = 1.0;            // gaussian
  double halfwidth = 1.0;        // uniform on [-halfwidth, halfwidth]
  std::vector<double> support;   // discrete (dim 1 only)
  std::vector<double> probs;
  int dimension = 1;

  // throws std::invalid_argument on malformed specs
  void validate() const;

  void sample(Rng& rng, std::span<double> out) const;

  // G(y) = E ||y - Z||  (abs for dim 1, euclidean otherwise).
  // Closed forms for dim 1; quadrature for dim > 1.
  double mean_distance(std::span<const double> y) const;

  double mean_distance(double y) const {
    return mean_distance(std::span<const double>(&y, 1));
  }
};

double standard_normal_cdf(double x);

}  // namespace nonstat
