#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include <mpfr.h>

#include "krank/bessel.hpp"
#include "krank/comparators.hpp"
#include "krank/errors.hpp"

using namespace krank;
using std::numbers::pi;

namespace {

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

// Ascending series sum_j (u/2)^{2j+nu} / (j! Gamma(j+nu+1)), returned as log|I|.
double log_bessel_power_series(double nu, double u) {
  const mpfr_prec_t bits = 400;
  mpfr_t sum, term, x, g, tmp;
  mpfr_inits2(bits, sum, term, x, g, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(sum, 1);
  mpfr_set_d(x, u / 2.0, MPFR_RNDN);
  for (int j = 0; j < 400; ++j) {
    // term = x^{2j+nu} / (j! Gamma(j+nu+1))
    mpfr_set_d(tmp, 2.0 * j + nu, MPFR_RNDN);
    mpfr_pow(term, x, tmp, MPFR_RNDN);
    mpfr_fac_ui(g, j, MPFR_RNDN);
    mpfr_div(term, term, g, MPFR_RNDN);
    mpfr_set_d(tmp, j + nu + 1.0, MPFR_RNDN);
    mpfr_gamma(g, tmp, MPFR_RNDN);
    mpfr_div(term, term, g, MPFR_RNDN);
    mpfr_add(sum, sum, term, MPFR_RNDN);
  }
  mpfr_abs(sum, sum, MPFR_RNDN);
  mpfr_log(sum, sum, MPFR_RNDN);
  const double out = mpfr_get_d(sum, MPFR_RNDN);
  mpfr_clears(sum, term, x, g, tmp, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double bessel(HalfInt nu, double u) { return bessel_i_halfint(nu, u).to_double(); }

}  // namespace

TEST_CASE("classical half-integer Bessel closed forms") {
  for (double u : {0.3, 2.0, 10.0, 35.0}) {
    const double front = std::sqrt(2.0 / (pi * u));
    CHECK(bessel(half(1), u) == doctest::Approx(front * std::sinh(u)).epsilon(1e-13));
    CHECK(bessel(half(-1), u) == doctest::Approx(front * std::cosh(u)).epsilon(1e-13));
    CHECK(bessel(half(3), u) ==
          doctest::Approx(front * (std::cosh(u) - std::sinh(u) / u)).epsilon(1e-12));
  }
  const LogReal big = bessel_i_halfint(half(1), 5000.0);
  CHECK(big.log_magnitude() == doctest::Approx(5000.0 - 0.5 * std::log(2 * pi * 5000.0)).epsilon(1e-14));
}

TEST_CASE("Bessel closed form against the power series") {
  const double expected = log_bessel_power_series(-2.5, 10.0);
  const LogReal value = bessel_i_halfint(half(-5), 10.0);
  CHECK(value.sign() == 1);
  CHECK(std::abs(std::exp(value.log_magnitude() - expected) - 1.0) <= 1e-10);
  for (int twice : {-41, -17, -3, 5, 19, 41})
    for (double u : {0.7, 4.0, 25.0}) {
      const double ref = log_bessel_power_series(twice / 2.0, u);
      CHECK(std::abs(std::exp(bessel_i_halfint(half(twice), u).log_magnitude() - ref) - 1.0) <= 1e-10);
    }
}

TEST_CASE("Bessel recurrence") {
  for (int twice = -9; twice <= 9; twice += 2)
    for (double u : {10.0, 50.0}) {
      const HalfInt nu = half(twice);
      const Real lhs = bessel_i_halfint_scaled(nu - 1, u, 200) - bessel_i_halfint_scaled(nu + 1, u, 200);
      const Real rhs = Real(2.0 * nu.to_double() / u, 200) * bessel_i_halfint_scaled(nu, u, 200);
      CHECK(std::abs((lhs / rhs).to_double() - 1.0) <= 1e-10);
    }
}

TEST_CASE("Bessel domain errors") {
  CHECK_THROWS_AS(bessel_i_halfint(HalfInt::from_int(2), 3.0), DomainError);
  CHECK_THROWS_AS(bessel_i_halfint(half(43), 3.0), DomainError);
  CHECK_THROWS_AS(bessel_i_halfint(half(1), 0.0), DomainError);
}

TEST_CASE("Hhat expansion") {
  const HHatResult r0 = h_hat(half(-5), 0, 1e6, 1);
  CHECK(r0.series == doctest::Approx(1.0).epsilon(1e-5));

  const HHatResult r = h_hat(half(-5), 1, 50.0, 3);
  CHECK(std::abs(r.exact - r.series) <= 2 * r.first_omitted);

  // gamma_1(mu, 2) = 1, so the series for nu = 2 opens with -1/u
  const HHatResult r2 = h_hat(half(-7), 2, 100.0, 1);
  CHECK(r2.series == doctest::Approx(-0.01).epsilon(1e-15));

  for (int twice : {-5, -7, -9})
    for (int nu = 0; nu <= 2; ++nu)
      for (double u : {30.0, 50.0, 100.0})
        for (int L : {2, 3}) {
          const HHatResult res = h_hat(half(twice), nu, u, L);
          CHECK(std::abs(res.exact - res.series) <= 2 * res.first_omitted);
        }

  CHECK(h_hat(half(-9), 8, 30.0, 5).working_bits > 128);
  CHECK_THROWS_AS(h_hat(half(-5), 9, 30.0, 3), DomainError);
  CHECK_THROWS_AS(h_hat(half(-5), 1, 30.0, 3, 1 << 16), PrecisionError);
}

TEST_CASE("false theta expansion") {
  const SeriesComparison a = false_theta_compare(0, 0.0, {0.01, 0.0}, 4);
  CHECK(a.abs_error() <= 10 * a.scale);
  CHECK(a.exact.real() == doctest::Approx(0.5).epsilon(0.01));

  const SeriesComparison b = false_theta_compare(1, 100.0, {0.01, 0.005}, 4);
  CHECK(b.abs_error() <= 10 * b.scale);

  for (int l = 0; l <= 2; ++l)
    for (double bb : {0.0, 1.0, 10.0, 100.0})
      for (std::complex<double> z : {std::complex<double>(0.01, 0.0), std::complex<double>(0.02, 0.002)}) {
        const SeriesComparison c = false_theta_compare(l, bb, z, 4);
        CHECK(c.abs_error() <= 10 * c.scale);
      }

  CHECK_THROWS_AS(false_theta_compare(0, 0.0, {0.0, 0.0}, 4), DomainError);
  CHECK_THROWS_AS(false_theta_compare(0, 0.0, {0.01, 0.02}, 4), DomainError);
  CHECK_THROWS_AS(false_theta_compare(0, -1.0, {0.01, 0.0}, 4), DomainError);
}

TEST_CASE("false theta decays like e^{-b Re z} once b Re z is large") {
  // f(w) = 1/(1+e^w) only behaves like e^{-w} for w >> 1
  for (double b : {300.0, 600.0, 1000.0}) {
    const std::complex<double> z(0.01, 0.0);
    const double lo = false_theta_compare(0, b, z, 4).exact.real();
    const double hi = false_theta_compare(0, 2 * b, z, 4).exact.real();
    CHECK(std::abs(hi / lo / std::exp(-b * z.real()) - 1.0) <= 0.05);
    const double rlo = false_theta_compare(0, b, z, 4).expansion.real();
    const double rhi = false_theta_compare(0, 2 * b, z, 4).expansion.real();
    CHECK(std::abs(rhi / rlo / std::exp(-b * z.real()) - 1.0) <= 0.05);
  }
}

TEST_CASE("H_{k,m,j} expansion") {
  const SeriesComparison a = h_kmj_compare(1, 0, 0, {0.01, 0.0}, 4);
  CHECK(a.abs_error() <= 10 * a.scale);
  CHECK(a.exact.real() == doctest::Approx(0.0025).epsilon(0.05));

  const SeriesComparison b = h_kmj_compare(3, 200, 1, {0.02, 0.0}, 4);
  CHECK(b.abs_error() <= 10 * b.scale);

  for (int j = -2; j <= 2; ++j)
    for (std::int64_t m : {2, 30}) {
      const SeriesComparison c = h_kmj_compare(2, m, j, {0.015, 0.01}, 5);
      CHECK(c.abs_error() <= 10 * c.scale);
    }

  // P_1 = c_1(j) (-z)
  CHECK(h_kmj_poly(2, 1, 1, {0.01, 0.0}).real() == doctest::Approx(-0.01));
  CHECK_THROWS_AS(h_kmj_compare(2, 0, -1, {0.01, 0.0}, 4), DomainError);
  CHECK_THROWS_AS(h_kmj_compare(2, 0, 0, {0.2, 0.0}, 4), DomainError);
}

TEST_CASE("eta main term") {
  const EtaComparison a = eta_inv_compare({0.01, 0.0});
  CHECK(a.relative_deviation <= 1e-10);
  CHECK(a.exact.real() > 0);
  CHECK(a.main_term.real() > 0);
  CHECK(std::abs(a.exact.imag()) == 0.0);
  CHECK(std::abs(a.main_term.imag()) == 0.0);

  const EtaComparison b = eta_inv_compare({0.02, 0.002});
  CHECK(b.abs_difference <= b.additive_bound);
  CHECK(b.additive_bound == doctest::Approx(std::sqrt(std::abs(std::complex<double>(0.02, 0.002)))));

  const EtaComparison c = eta_inv_compare({0.25, 0.4});
  CHECK(c.abs_difference <= c.additive_bound);

  CHECK_THROWS_AS(eta_inv_compare({0.3, 0.0}), DomainError);
  CHECK_THROWS_AS(eta_inv_compare({0.01, 0.2}), DomainError);
  CHECK_THROWS_AS(eta_inv_compare({0.01, 0.0}, 10), DomainError);
}

TEST_CASE("contour form of H expands with gamma at -mu") {
  // (1/2 pi i) int w^{-mu-1} (w-1)^nu e^{(u/2)(w+1/w)} dw = sum_h (-1)^h C(nu,h) I_{mu-nu+h}(u)
  const double u = 200.0;
  for (int twice : {-5, -7, -9})
    for (int nu = 1; nu <= 3; ++nu) {
      const HalfInt mu = half(twice);
      Real acc(256);
      for (int h = 0; h <= nu; ++h) {
        Real term = Real(binomial(nu, h), 256) * bessel_i_halfint_scaled(mu - nu + h, u, 256);
        acc += (h % 2 == 0) ? term : -term;
      }
      double series = 0.0;
      for (int l = 0; l <= 6; ++l)
        series += ((l % 2 == 0) ? 1.0 : -1.0) * gamma_coeff(l, -mu, nu).get_d() / std::pow(u, l);
      CHECK(std::abs(acc.to_double() - series) <= 1e-9);
      double wrong = 0.0;
      for (int l = 0; l <= 6; ++l)
        wrong += ((l % 2 == 0) ? 1.0 : -1.0) * gamma_coeff(l, mu, nu).get_d() / std::pow(u, l);
      CHECK(std::abs(acc.to_double() - wrong) > 1e-5);
    }
}
