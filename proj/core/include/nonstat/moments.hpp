#pragma once

#include <span>

namespace nonstat {

struct MomentFit {
  double v = 0.0;
  double m = 0.0;
  int k_max = 2;
};

// Finds (v, m) with empirical moments mu_k <= (k!/2) v m^(k-2) for all
// k in 2..k_max, minimizing v over a 512-point geometric grid of m values
// spanning [max(samples)/k_max, max(samples)]; ties go to the smaller m.
// For k = 2 the constraint is m-free (v >= mu_2), so v is bounded below
// by the empirical second moment.
MomentFit fit_moment_constants(std::span<const double> samples_g, int k_max);

// mu_k = mean of samples^k
double empirical_moment(std::span<const double> samples, int k);

}  // namespace nonstat
