#pragma once

#include <utility>
#include <vector>

namespace nonstat {

// K_t(rho) = (1 - rho^(t+1)) / (1 - rho); geometric propagation constant
double k_rho(int t, double rho);

struct BernsteinInputs {
  int n = 1;
  double rho = 0.0;
  double m = 1.0;   // scale constant of the moment condition
  double v1 = 0.0;  // initial-state variance proxy
  double v2 = 0.0;  // per-step variance proxy

  double delta() const { return m * k_rho(n - 1, rho); }
};

// V_(n) = V1 K_{n-1}^2 + V2 sum_{k=2}^n K_{n-k}^2
double v_n(const BernsteinInputs& in);

// E[exp(+-s S_n)] <= exp(s^2 V_(n) / (2 (1 - s delta))), 0 <= s < 1/delta
double bernstein_mgf_bound(const BernsteinInputs& in, double s);

// One-sided tail bound, clipped to <= 1.
//   refined: exp(-x^2 / (V (1 + sqrt(1 + 2 x delta / V)) + x delta))
//   simple:  exp(-x^2 / (2 (V + x delta)))
// With V_(n) == 0 and refined requested the simple-form limit
// exp(-x / (2 delta)) is returned and *degenerate is set.
double bernstein_tail(const BernsteinInputs& in, double x, bool refined,
                      bool* degenerate = nullptr);

// x solving the simple form exp(-x^2/(2(V + x delta))) = eta:
// x = delta l + sqrt(delta^2 l^2 + 2 l V), l = ln(1/eta)
double invert_bernstein(const BernsteinInputs& in, double eta);

struct CramerInputs {
  int n = 1;
  double rho = 0.0;
  double a = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;

  double delta() const { return a / k_rho(n - 1, rho); }
  // K = (2/e^2) (K1 + K2 sum_{i=2}^n (K_{n-i}/K_{n-1})^2)
  double big_k() const;
};

struct CramerBound {
  double refined = 1.0;  // exp(-(x d)^2 / (2K (1 + sqrt(1 + x d / K)) + x d))
  double loose = 1.0;    // exp(-(x d)^2 / (4K + 2 x d))
};
CramerBound cramer_bound(const CramerInputs& in, double x);

// minimizer of the Chernoff exponent, s(x) = (x d^2/K)/(x d/K + 1 + sqrt(1 + x d/K))
double cramer_optimal_s(const CramerInputs& in, double x);

// Rio's rate function l(t) = (t - ln t - 1) + t/(e^t - 1) + ln(1 - e^-t)
double ell(double t);

// Young transform l*(x) = sup_{t>0} (x t - l(t)) for x in [0, 1)
double ell_star(double x);

struct McDiarmidInputs {
  int n = 1;
  double rho = 0.0;
  std::vector<double> m_k;  // n positive bounds on the increment ranges
};

struct McDiarmidConstants {
  double m2 = 0.0;         // M^2(n,rho) = sum (K_{n-k} M_k)^2
  double d = 0.0;          // D(n,rho)   = sum  K_{n-k} M_k
  double delta_cap = 0.0;  // Delta(n,rho) = K_{n-1} max M_k
};
McDiarmidConstants mcdiarmid_constants(const McDiarmidInputs& in);

struct RioBound {
  double rio = 1.0;         // exp(-(D^2/M^2) l*(x/D))
  double mcdiarmid = 1.0;   // exp(-2 x^2 / M^2)
  double power_form = 1.0;  // ((D-x)/D)^((2Dx - x^2)/M^2)
};
// requires 0 <= x <= D(n,rho)
RioBound rio_tail(const McDiarmidInputs& in, double x);

}  // namespace nonstat
