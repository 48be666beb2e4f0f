#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nonstat/bounds.hpp"
#include "nonstat/rng.hpp"

using namespace nonstat;

TEST_CASE("k_rho closed form") {
  CHECK(k_rho(0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k_rho(3, 0.0) == 1.0);
  CHECK(k_rho(2, 0.5) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK_THROWS(k_rho(1, 1.0));
  CHECK_THROWS(k_rho(1, -0.1));
  CHECK_THROWS(k_rho(-1, 0.5));
}

TEST_CASE("v_n closed form") {
  CHECK(v_n({.n = 1, .rho = 0.3, .m = 1.0, .v1 = 3.0, .v2 = 7.0}) ==
        doctest::Approx(3.0).epsilon(1e-15));
  CHECK(v_n({.n = 2, .rho = 0.0, .m = 1.0, .v1 = 1.0, .v2 = 1.0}) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(v_n({.n = 3, .rho = 0.5, .m = 1.0, .v1 = 0.0, .v2 = 1.0}) ==
        doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("v_n sandwich on random tuples") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    BernsteinInputs in;
    in.n = 1 + static_cast<int>(rng.next_u64() % 1000);
    in.rho = rng.uniform(0.0, 0.99);
    in.v1 = rng.uniform(0.0, 10.0);
    in.v2 = rng.uniform(0.0, 10.0);
    in.m = 1.0;
    const double v = v_n(in);
    const double base = in.v1 + (in.n - 1) * in.v2;
    CHECK(v >= base * (1.0 - 1e-12));
    CHECK(v <= base / ((1.0 - in.rho) * (1.0 - in.rho)) * (1.0 + 1e-12));
  }
}

TEST_CASE("bernstein_mgf_bound") {
  const BernsteinInputs in{.n = 2, .rho = 0.0, .m = 1.0, .v1 = 1.0, .v2 = 1.0};
  CHECK(bernstein_mgf_bound(in, 0.0) == 1.0);
  CHECK(bernstein_mgf_bound(in, 0.5) ==
        doctest::Approx(1.6487212707001281).epsilon(1e-14));
  // monotone divergence approaching s = 1/delta
  double prev = 1.0;
  for (double s = 0.1; s < 1.0; s += 0.1) {
    const double v = bernstein_mgf_bound(in, s);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(bernstein_mgf_bound(in, 0.999999) > 1e5);
  CHECK_THROWS(bernstein_mgf_bound(in, 1.0));
  CHECK_THROWS(bernstein_mgf_bound(in, -0.1));
}

TEST_CASE("bernstein_tail closed-form values") {
  // V = 1, delta = 1 via n=1, rho=0, m=1, v1=1
  const BernsteinInputs unit{.n = 1, .rho = 0.0, .m = 1.0, .v1 = 1.0, .v2 = 0.0};
  CHECK(bernstein_tail(unit, 0.0, true) == 1.0);
  CHECK(bernstein_tail(unit, 0.0, false) == 1.0);
  CHECK(bernstein_tail(unit, 1.0, true) ==
        doctest::Approx(0.76494664519492383).epsilon(1e-14));
  CHECK(bernstein_tail(unit, 1.0, false) ==
        doctest::Approx(0.77880078307140487).epsilon(1e-14));

  // delta = 0 (m = 0): both forms coincide, exp(-x^2 / 2V)
  const BernsteinInputs nodelta{.n = 1, .rho = 0.0, .m = 0.0, .v1 = 1.0, .v2 = 0.0};
  CHECK(bernstein_tail(nodelta, 2.0, true) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(bernstein_tail(nodelta, 2.0, false) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-14));

  // degenerate V = 0: refined falls back to the simple-form limit
  const BernsteinInputs degen{.n = 1, .rho = 0.0, .m = 1.0, .v1 = 0.0, .v2 = 0.0};
  bool flag = false;
  CHECK(bernstein_tail(degen, 3.0, true, &flag) ==
        doctest::Approx(std::exp(-1.5)).epsilon(1e-14));
  CHECK(flag);

  CHECK_THROWS(bernstein_tail(unit, -1.0, true));
}

TEST_CASE("bernstein refined <= simple on a grid") {
  Rng rng(3);
  for (int inst = 0; inst < 5; ++inst) {
    BernsteinInputs in;
    in.n = 2 + static_cast<int>(rng.next_u64() % 200);
    in.rho = rng.uniform(0.0, 0.95);
    in.m = rng.uniform(0.01, 3.0);
    in.v1 = rng.uniform(0.0, 5.0);
    in.v2 = rng.uniform(0.01, 5.0);
    double prev_r = 1.0, prev_s = 1.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = 0.05 * i;
      const double r = bernstein_tail(in, x, true);
      const double s = bernstein_tail(in, x, false);
      CHECK(r <= s * (1.0 + 1e-14));
      CHECK(r <= prev_r * (1.0 + 1e-14));  // non-increasing in x
      CHECK(s <= prev_s * (1.0 + 1e-14));
      prev_r = r;
      prev_s = s;
    }
  }
}

TEST_CASE("invert_bernstein") {
  const BernsteinInputs unit{.n = 1, .rho = 0.0, .m = 1.0, .v1 = 1.0, .v2 = 0.0};
  CHECK(invert_bernstein(unit, 1.0) == 0.0);
  const BernsteinInputs nodelta{.n = 1, .rho = 0.0, .m = 0.0, .v1 = 1.0, .v2 = 0.0};
  CHECK(invert_bernstein(nodelta, std::exp(-2.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(invert_bernstein(unit, 0.05) == doctest::Approx(6.8643077739056315).epsilon(1e-12));
  CHECK_THROWS(invert_bernstein(unit, 0.0));
  CHECK_THROWS(invert_bernstein(unit, 1.5));

  // round trip on the eta grid
  const BernsteinInputs in{.n = 20, .rho = 0.6, .m = 0.8, .v1 = 2.0, .v2 = 1.5};
  for (double eta : {0.5, 0.1, 0.01, 1e-6}) {
    const double x = invert_bernstein(in, eta);
    CHECK(bernstein_tail(in, x, false) == doctest::Approx(eta).epsilon(1e-8));
  }
}

TEST_CASE("cramer_bound closed-form values") {
  CramerInputs n1{.n = 1, .rho = 0.5, .a = 1.0, .k1 = 2.0, .k2 = 1.0};
  CHECK(n1.big_k() ==
        doctest::Approx(2.0 / std::exp(2.0) * 2.0).epsilon(1e-14));
  CHECK(cramer_bound(n1, 0.0).refined == 1.0);
  CHECK(cramer_bound(n1, 0.0).loose == 1.0);

  CramerInputs n3{.n = 3, .rho = 0.5, .a = 1.0, .k1 = 1.0, .k2 = 1.0};
  CHECK(n3.big_k() == doctest::Approx(0.5579128002815462).epsilon(1e-14));
  // x delta = 1 at x = K_2(0.5) = 1.75
  const CramerBound cb = cramer_bound(n3, 1.75);
  CHECK(cb.loose == doctest::Approx(0.78953242730115459).epsilon(1e-13));
  CHECK(cb.refined <= cb.loose);
}

TEST_CASE("cramer_optimal_s") {
  CramerInputs in{.n = 3, .rho = 0.5, .a = 1.0, .k1 = 1.0, .k2 = 1.0};
  const double delta = in.delta();
  const double bigk = in.big_k();

  // x delta / K = 3 => s = delta / 2
  const double x3 = 3.0 * bigk / delta;
  CHECK(cramer_optimal_s(in, x3) == doctest::Approx(0.5 * delta).epsilon(1e-14));

  // substituting s(x) into the Chernoff exponent reproduces the refined bound
  for (double x : {0.2, 1.0 / delta, 5.0, 20.0}) {
    const double s = cramer_optimal_s(in, x);
    CHECK(s >= 0.0);
    CHECK(s < delta);
    const double chernoff =
        std::exp(-s * x + s * s * bigk / (delta * delta) / (1.0 - s / delta));
    const double refined = cramer_bound(in, x).refined;
    if (refined < 1.0)
      CHECK(chernoff == doctest::Approx(refined).epsilon(1e-10));

    // golden-section oracle over s in [0, delta)
    auto expo = [&](double t) {
      return -t * x + t * t * bigk / (delta * delta) / (1.0 - t / delta);
    };
    double a = 0.0, b = delta * (1.0 - 1e-12);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = expo(c), fd = expo(d);
    while (b - a > 1e-13) {
      if (fc < fd) { b = d; d = c; fd = fc; c = b - gr * (b - a); fc = expo(c); }
      else { a = c; c = d; fc = fd; d = a + gr * (b - a); fd = expo(d); }
    }
    CHECK(std::abs(s - 0.5 * (a + b)) / delta <= 1e-6);
  }
  CHECK_THROWS(cramer_optimal_s(in, 0.0));
}

TEST_CASE("ell closed-form values and stability") {
  CHECK(ell(1.0) == doctest::Approx(0.12330156148224453).epsilon(1e-13));
  CHECK(ell(2.0) == doctest::Approx(0.47447464707052694).epsilon(1e-13));
  CHECK(ell(1e-9) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(ell(1e-6) < 1e-12);
  // series and direct branch agree at the switch point
  CHECK(ell(0.001) == doctest::Approx(0.001 * 0.001 / 8.0).epsilon(1e-6));
  CHECK(std::isfinite(ell(1000.0)));
  CHECK_THROWS(ell(0.0));
  CHECK_THROWS(ell(-1.0));
}

TEST_CASE("ell_star values and dominance") {
  CHECK(ell_star(0.0) == 0.0);
  CHECK(ell_star(0.5) == doctest::Approx(0.53229790889199995).epsilon(1e-9));
  CHECK(ell_star(0.9) == doctest::Approx(2.3021828844129876).epsilon(1e-9));
  CHECK(ell_star(0.5) >= 0.51986038541995898);
  CHECK(ell_star(0.9) >= 1.62);
  CHECK_THROWS(ell_star(1.0));
  CHECK_THROWS(ell_star(-0.1));
  // l*(x) >= (x^2 - 2x) ln(1-x) >= 2 x^2 on the full grid
  for (int i = 0; i < 100; ++i) {
    const double x = 0.01 * i;
    const double mid = x == 0.0 ? 0.0 : (x * x - 2.0 * x) * std::log(1.0 - x);
    CHECK(ell_star(x) >= mid - 1e-9);
    CHECK(mid >= 2.0 * x * x - 1e-12);
  }
}

TEST_CASE("mcdiarmid_constants closed forms") {
  {
    const McDiarmidConstants c = mcdiarmid_constants({.n = 1, .rho = 0.7, .m_k = {2.0}});
    CHECK(c.m2 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(c.d == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.delta_cap == doctest::Approx(2.0).epsilon(1e-15));
  }
  {
    const McDiarmidConstants c =
        mcdiarmid_constants({.n = 2, .rho = 0.0, .m_k = {1.0, 1.0}});
    CHECK(c.m2 == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.d == doctest::Approx(2.0).epsilon(1e-15));
  }
  {
    const McDiarmidConstants c =
        mcdiarmid_constants({.n = 3, .rho = 0.5, .m_k = {1.0, 1.0, 1.0}});
    CHECK(c.d == doctest::Approx(4.25).epsilon(1e-15));
    CHECK(c.m2 == doctest::Approx(6.3125).epsilon(1e-15));
    // Cauchy-Schwarz sanity: m2 <= d * max_k K_{n-k} M_k
    CHECK(c.m2 <= c.d * 1.75 * (1.0 + 1e-15));
  }
  CHECK_THROWS(mcdiarmid_constants({.n = 2, .rho = 0.0, .m_k = {1.0}}));
  CHECK_THROWS(mcdiarmid_constants({.n = 1, .rho = 0.0, .m_k = {0.0}}));
}

TEST_CASE("rio_tail values, dominance chain and range") {
  const McDiarmidInputs one{.n = 1, .rho = 0.3, .m_k = {1.0}};
  {
    const RioBound rb = rio_tail(one, 0.0);
    CHECK(rb.rio == 1.0);
    CHECK(rb.mcdiarmid == 1.0);
  }
  {
    const RioBound rb = rio_tail(one, 0.5);
    CHECK(rb.mcdiarmid == doctest::Approx(0.60653065971263342).epsilon(1e-14));
    CHECK(rb.power_form == doctest::Approx(0.59460355750136053).epsilon(1e-12));
    CHECK(rb.rio == doctest::Approx(0.58725396192550689).epsilon(1e-9));
    CHECK(rb.rio <= rb.power_form * (1.0 + 1e-12));
    CHECK(rb.power_form <= 1.0);
  }
  {
    const RioBound rb = rio_tail(one, 1.0);  // x = D
    CHECK(rb.power_form == 0.0);
    CHECK(rb.rio == 0.0);
  }
  CHECK_THROWS(rio_tail(one, 1.5));
  CHECK_THROWS(rio_tail(one, -0.5));

  // rio <= power form <= 1 across a multi-step instance
  const McDiarmidInputs in{.n = 6, .rho = 0.4, .m_k = {1.0, 0.5, 2.0, 1.0, 1.0, 0.7}};
  const McDiarmidConstants c = mcdiarmid_constants(in);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = c.d * i / 100.0;
    const RioBound rb = rio_tail(in, x);
    CHECK(rb.rio <= rb.power_form * (1.0 + 1e-12) + 1e-15);
    CHECK(rb.power_form <= 1.0);
    CHECK(rb.mcdiarmid <= 1.0);
    CHECK(rb.rio <= prev * (1.0 + 1e-12));  // non-increasing
    prev = rb.rio;
  }
}
