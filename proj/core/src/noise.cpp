#include "nonstat/noise.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>

namespace nonstat {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

void DistSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  switch (family) {
    case DistFamily::gaussian:
      if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
      break;
    case DistFamily::uniform:
      if (!(halfwidth > 0.0)) throw std::invalid_argument("uniform halfwidth must be > 0");
      break;
    case DistFamily::discrete: {
      if (support.empty()) throw std::invalid_argument("discrete support must be non-empty");
      if (support.size() != probs.size())
        throw std::invalid_argument("discrete support/probs size mismatch");
      if (dimension != 1)
        throw std::invalid_argument("discrete family supports dimension 1 only");
      double sum = 0.0;
      for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("discrete probs must be >= 0");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("discrete probs must sum to 1");
      break;
    }
  }
}

void DistSpec::sample(Rng& rng, std::span<double> out) const {
  switch (family) {
    case DistFamily::gaussian:
      for (auto& v : out) v = sigma * rng.gauss();
      break;
    case DistFamily::uniform:
      for (auto& v : out) v = rng.uniform(-halfwidth, halfwidth);
      break;
    case DistFamily::discrete:
      out[0] = support[rng.categorical(probs)];
      break;
  }
}

namespace {

// E|y - Z|, Z ~ N(0, sigma^2)
double gaussian_mad(double y, double sigma) {
  const double z = y / sigma;
  return sigma * std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * z * z) +
         y * (1.0 - 2.0 * standard_normal_cdf(-z));
}

// E|y - U|, U ~ Uniform[-h, h]
double uniform_mad(double y, double h) {
  if (std::abs(y) >= h) return std::abs(y);
  return (y * y + h * h) / (2.0 * h);
}

// E||y - Z|| for Z iid N(0, sigma^2)^d via the noncentral chi representation:
// ||y - Z||^2 / sigma^2 ~ chi'^2(d, (||y||/sigma)^2).
double gaussian_mean_norm(double r, double sigma, int d) {
  const double lambda2 = (r / sigma) * (r / sigma);
  boost::math::non_central_chi_squared dist(static_cast<double>(d), lambda2);
  const double mean = d + lambda2;
  const double sd = std::sqrt(2.0 * (d + 2.0 * lambda2));
  const double ub = mean + 15.0 * sd + 10.0;
  auto integrand = [&](double w) { return std::sqrt(w) * boost::math::pdf(dist, w); };
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, ub, 12, 1e-12);
  return sigma * val;
}

// tensor Gauss-Legendre over [-h,h]^d, recursing on coordinates
double uniform_mean_norm(std::span<const double> y, double h, int d) {
  if (d > 4)
    throw std::invalid_argument("uniform mean_distance supported up to dimension 4");
  using G = boost::math::quadrature::gauss<double, 40>;
  std::vector<double> u(static_cast<std::size_t>(d));
  std::function<double(int)> rec = [&](int k) -> double {
    if (k == d) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) {
        const double t = y[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)];
        s += t * t;
      }
      return std::sqrt(s);
    }
    auto f = [&](double x) {
      u[static_cast<std::size_t>(k)] = x;
      return rec(k + 1);
    };
    return G::integrate(f, -h, h) / (2.0 * h);
  };
  return rec(0);
}

}  // namespace

double DistSpec::mean_distance(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != dimension)
    throw std::invalid_argument("mean_distance: argument dimension mismatch");
  if (dimension == 1) {
    switch (family) {
      case DistFamily::gaussian:
        return gaussian_mad(y[0], sigma);
      case DistFamily::uniform:
        return uniform_mad(y[0], halfwidth);
      case DistFamily::discrete: {
        double s = 0.0;
        for (std::size_t i = 0; i < support.size(); ++i)
          s += probs[i] * std::abs(y[0] - support[i]);
        return s;
      }
    }
  }
  double r2 = 0.0;
  for (double v : y) r2 += v * v;
  const double r = std::sqrt(r2);
  switch (family) {
    case DistFamily::gaussian:
      return gaussian_mean_norm(r, sigma, dimension);
    case DistFamily::uniform:
      return uniform_mean_norm(y, halfwidth, dimension);
    default:
      throw std::invalid_argument("unsupported family for dimension > 1");
  }
}

}  // namespace nonstat
