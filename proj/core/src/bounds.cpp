#include "nonstat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nonstat {

namespace {
constexpr double kRhoCap = 1.0 - 1e-9;

double clip_prob(double p) { return std::min(p, 1.0); }
}  // namespace

double k_rho(int t, double rho) {
  if (t < 0) throw std::invalid_argument("k_rho: t must be >= 0");
  if (rho < 0.0 || rho > kRhoCap)
    throw std::invalid_argument("k_rho: rho must lie in [0, 1 - 1e-9]");
  if (rho == 0.0) return 1.0;
  return (1.0 - std::pow(rho, t + 1)) / (1.0 - rho);
}

double v_n(const BernsteinInputs& in) {
  if (in.n < 1) throw std::invalid_argument("v_n: n must be >= 1");
  const double k1 = k_rho(in.n - 1, in.rho);
  double acc = in.v1 * k1 * k1;
  for (int k = 2; k <= in.n; ++k) {
    const double kk = k_rho(in.n - k, in.rho);
    acc += in.v2 * kk * kk;
  }
  return acc;
}

double bernstein_mgf_bound(const BernsteinInputs& in, double s) {
  const double delta = in.delta();
  if (s < 0.0 || (delta > 0.0 && s >= 1.0 / delta))
    throw std::invalid_argument("bernstein_mgf_bound: s outside [0, 1/delta)");
  return std::exp(s * s * v_n(in) / (2.0 * (1.0 - s * delta)));
}

double bernstein_tail(const BernsteinInputs& in, double x, bool refined,
                      bool* degenerate) {
  if (x < 0.0) throw std::invalid_argument("bernstein_tail: x must be >= 0");
  if (degenerate) *degenerate = false;
  if (x == 0.0) return 1.0;
  const double v = v_n(in);
  const double delta = in.delta();
  if (!refined) {
    const double denom = 2.0 * (v + x * delta);
    if (denom == 0.0) return 0.0;  // point-mass chain: S_n = 0 a.s.
    return clip_prob(std::exp(-x * x / denom));
  }
  if (v == 0.0) {
    if (degenerate) *degenerate = true;
    if (delta == 0.0) return 0.0;
    return clip_prob(std::exp(-x / (2.0 * delta)));
  }
  const double denom = v * (1.0 + std::sqrt(1.0 + 2.0 * x * delta / v)) + x * delta;
  return clip_prob(std::exp(-x * x / denom));
}

double invert_bernstein(const BernsteinInputs& in, double eta) {
  if (!(eta > 0.0) || eta > 1.0)
    throw std::invalid_argument("invert_bernstein: eta must lie in (0, 1]");
  const double l = std::log(1.0 / eta);
  const double delta = in.delta();
  const double v = v_n(in);
  return delta * l + std::sqrt(delta * delta * l * l + 2.0 * l * v);
}

double CramerInputs::big_k() const {
  const double kn1 = k_rho(n - 1, rho);
  double s = 0.0;
  for (int i = 2; i <= n; ++i) {
    const double r = k_rho(n - i, rho) / kn1;
    s += r * r;
  }
  return 2.0 / (std::exp(1.0) * std::exp(1.0)) * (k1 + k2 * s);
}

CramerBound cramer_bound(const CramerInputs& in, double x) {
  if (x < 0.0) throw std::invalid_argument("cramer_bound: x must be >= 0");
  if (in.k1 < 1.0 || in.k2 < 1.0)
    throw std::invalid_argument("cramer_bound: K1 and K2 must be >= 1");
  if (!(in.a > 0.0)) throw std::invalid_argument("cramer_bound: a must be > 0");
  CramerBound out;
  if (x == 0.0) return out;
  const double bigk = in.big_k();
  const double xd = x * in.delta();
  out.refined = clip_prob(std::exp(
      -(xd * xd) / (2.0 * bigk * (1.0 + std::sqrt(1.0 + xd / bigk)) + xd)));
  out.loose = clip_prob(std::exp(-(xd * xd) / (4.0 * bigk + 2.0 * xd)));
  return out;
}

double cramer_optimal_s(const CramerInputs& in, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("cramer_optimal_s: x must be > 0");
  const double delta = in.delta();
  const double u = x * delta / in.big_k();  // x delta / K
  return delta * u / (u + 1.0 + std::sqrt(1.0 + u));
}

double ell(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("ell: t must be > 0");
  if (t < 1e-3) return t * t / 8.0;  // l(t) = t^2/8 + O(t^4)
  if (t > 36.0) {
    // e^-t below 2^-52: tail terms reduce to their leading corrections
    const double e = std::exp(-t);
    return t - std::log(t) - 1.0 + t * e + std::log1p(-e);
  }
  const double em1 = std::expm1(t);
  return (t - std::log(t) - 1.0) + t / em1 + std::log1p(-std::exp(-t));
}

double ell_star(double x) {
  if (x < 0.0 || x >= 1.0)
    throw std::invalid_argument("ell_star: x must lie in [0, 1)");
  if (x == 0.0) return 0.0;
  // objective x t - l(t) is concave; the maximizer behaves like 1/(1-x)
  // near x = 1, so the bracket must widen accordingly
  const double lo = 1e-8;
  const double hi = std::max(50.0, 10.0 / (1.0 - x));
  auto obj = [&](double t) { return x * t - ell(t); };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = obj(c), fd = obj(d);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = obj(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = obj(d);
    }
  }
  return std::max(0.0, obj(0.5 * (a + b)));
}

McDiarmidConstants mcdiarmid_constants(const McDiarmidInputs& in) {
  if (static_cast<int>(in.m_k.size()) != in.n)
    throw std::invalid_argument("mcdiarmid_constants: need n values M_k");
  McDiarmidConstants out;
  double max_mk = 0.0;
  for (int k = 1; k <= in.n; ++k) {
    const double mk = in.m_k[static_cast<std::size_t>(k - 1)];
    if (!(mk > 0.0)) throw std::invalid_argument("mcdiarmid_constants: M_k must be > 0");
    const double term = k_rho(in.n - k, in.rho) * mk;
    out.m2 += term * term;
    out.d += term;
    max_mk = std::max(max_mk, mk);
  }
  out.delta_cap = k_rho(in.n - 1, in.rho) * max_mk;
  return out;
}

RioBound rio_tail(const McDiarmidInputs& in, double x) {
  const McDiarmidConstants c = mcdiarmid_constants(in);
  if (x < 0.0 || x > c.d)
    throw std::invalid_argument("rio_tail: x must lie in [0, D(n,rho)]");
  RioBound out;
  if (x == 0.0) return out;
  const double u = x / c.d;
  const double ratio = c.d * c.d / c.m2;
  if (u >= 1.0) {
    out.rio = 0.0;
    out.power_form = 0.0;
  } else {
    out.rio = clip_prob(std::exp(-ratio * ell_star(u)));
    out.power_form =
        clip_prob(std::pow((c.d - x) / c.d, (2.0 * c.d * x - x * x) / c.m2));
  }
  out.mcdiarmid = clip_prob(std::exp(-2.0 * x * x / c.m2));
  return out;
}

}  // namespace nonstat
