#include "nonstat/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace nonstat {

std::size_t ChainModel::period() const {
  switch (kind) {
    case UpdateKind::ar1: return coeffs.size();
    case UpdateKind::var1: return mats.size();
    case UpdateKind::periodic_functional: return phase_maps.size();
  }
  return 0;
}

void ChainModel::apply_map(std::int64_t t, std::span<const double> x,
                           std::span<double> out) const {
  const std::size_t p = period();
  const std::size_t phase = static_cast<std::size_t>((t - 1) % static_cast<std::int64_t>(p));
  switch (kind) {
    case UpdateKind::ar1:
      out[0] = coeffs[phase] * x[0];
      break;
    case UpdateKind::var1: {
      const int d = dimension();
      const auto& a = mats[phase];
      for (int i = 0; i < d; ++i) {
        double s = 0.0;
        for (int j = 0; j < d; ++j)
          s += a[static_cast<std::size_t>(i * d + j)] * x[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
      }
      break;
    }
    case UpdateKind::periodic_functional:
      out[0] = phase_maps[phase](x[0]);
      break;
  }
}

void ChainModel::apply(std::int64_t t, std::span<const double> x,
                       std::span<const double> eps, std::span<double> out) const {
  apply_map(t, x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += eps[i];
}

double operator_norm(std::span<const double> a, int d) {
  // power iteration on A^T A
  std::vector<double> v(static_cast<std::size_t>(d), 1.0 / std::sqrt(static_cast<double>(d)));
  std::vector<double> av(static_cast<std::size_t>(d)), w(static_cast<std::size_t>(d));
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    for (int i = 0; i < d; ++i) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += a[static_cast<std::size_t>(i * d + j)] * v[static_cast<std::size_t>(j)];
      av[static_cast<std::size_t>(i)] = s;
    }
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += a[static_cast<std::size_t>(i * d + j)] * av[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(j)] = s;
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    const double next = norm;  // Rayleigh-ish estimate of ||A^T A v||
    for (int j = 0; j < d; ++j) v[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j)] / norm;
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

void ChainModel::validate() const {
  noise.validate();
  init.validate();
  if (!(rho >= 0.0) || rho > 1.0 - 1e-9)
    throw std::invalid_argument("rho must lie in [0, 1) with margin 1e-9");
  if (noise.dimension != init.dimension)
    throw std::invalid_argument("noise/init dimension mismatch");
  if (period() == 0) throw std::invalid_argument("model has no update maps");
  switch (kind) {
    case UpdateKind::ar1:
      if (dimension() != 1) throw std::invalid_argument("ar1 requires dimension 1");
      for (double a : coeffs)
        if (std::abs(a) > rho + 1e-15)
          throw std::invalid_argument("ar1 coefficient exceeds rho");
      break;
    case UpdateKind::var1: {
      const int d = dimension();
      for (const auto& a : mats) {
        if (static_cast<int>(a.size()) != d * d)
          throw std::invalid_argument("var1 matrix has wrong size");
        if (operator_norm(a, d) > rho + 1e-8)
          throw std::invalid_argument("var1 operator norm exceeds rho");
      }
      break;
    }
    case UpdateKind::periodic_functional:
      if (dimension() != 1)
        throw std::invalid_argument("periodic_functional requires dimension 1");
      break;
  }
  // all supported update kinds are additive-noise, condition (3) with C = 1
  if (noise_c != 1.0)
    throw std::invalid_argument("additive-noise models require noise_c = 1");
}

Trajectory simulate(const ChainModel& model, int n, std::uint64_t seed,
                    std::uint64_t replicate_index) {
  if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
  model.validate();
  const int d = model.dimension();
  Trajectory traj;
  traj.n = n;
  traj.dim = d;
  traj.model_id = model.id;
  traj.seed = seed;
  traj.replicate_index = replicate_index;
  traj.data.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));

  Rng rng(hash64(seed, replicate_index));
  std::vector<double> eps(static_cast<std::size_t>(d));
  std::span<double> first(traj.data.data(), static_cast<std::size_t>(d));
  model.init.sample(rng, first);
  for (int t = 2; t <= n; ++t) {
    model.noise.sample(rng, eps);
    std::span<const double> prev(
        traj.data.data() + static_cast<std::size_t>(t - 2) * static_cast<std::size_t>(d),
        static_cast<std::size_t>(d));
    std::span<double> cur(
        traj.data.data() + static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(d),
        static_cast<std::size_t>(d));
    model.apply(t, prev, eps, cur);
  }
  return traj;
}

double g_eps(const ChainModel& model, std::span<const double> y) {
  return model.noise_c * model.noise.mean_distance(y);
}
double g_eps(const ChainModel& model, double y) {
  return g_eps(model, std::span<const double>(&y, 1));
}

double g_x1(const ChainModel& model, std::span<const double> x) {
  return model.init.mean_distance(x);
}
double g_x1(const ChainModel& model, double x) {
  return g_x1(model, std::span<const double>(&x, 1));
}

double expected_norm_bound(const ChainModel& model, int n) {
  if (n < 1) throw std::invalid_argument("expected_norm_bound: n must be >= 1");
  model.validate();  // rejects non-additive models (noise_c != 1)
  std::vector<double> zero(static_cast<std::size_t>(model.dimension()), 0.0);
  const double ge0 = g_eps(model, zero);
  const double gx0 = g_x1(model, zero);
  return ge0 / (1.0 - model.rho) + std::pow(model.rho, n - 1) * gx0;
}

}  // namespace nonstat
