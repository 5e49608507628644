#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "krank/coefficients.hpp"
#include "krank/errors.hpp"
#include "krank/exact_core.hpp"
#include "krank/expansion.hpp"
#include "krank/log_real.hpp"
#include "krank/logistic.hpp"
#include "krank/upsilon.hpp"

using namespace krank;
using std::numbers::pi;

namespace {

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

// a_j(mu) straight from the product, no shared code with the library.
Rational a_by_hand(int j, Rational mu) {
  Rational prod = 1;
  for (int s = 1; s <= j; ++s) prod *= 4 * mu * mu - (2 * s - 1) * (2 * s - 1);
  mpz_class denom = 1;
  for (int i = 1; i <= j; ++i) denom *= 8 * i;
  return prod / Rational(denom);
}

const PartitionTable& table() {
  static const PartitionTable t(10'000);
  return t;
}

}  // namespace

TEST_CASE("asym context") {
  const AsymContext c = asym_context(2500);
  CHECK(c.beta == doctest::Approx(pi / std::sqrt(6.0 * (2500.0 - 1.0 / 24.0))).epsilon(1e-15));
  for (std::int64_t n : {1, 7, 2500, 100000}) {
    const AsymContext ctx = asym_context(n);
    CHECK(std::abs(ctx.beta * ctx.lambda / (pi * pi / 6.0) - 1.0) < 1e-14);
    CHECK(std::abs(2.0 * ctx.lambda / (pi * pi / (3.0 * ctx.beta)) - 1.0) < 1e-14);
  }
  CHECK(beta_of(pi * pi / 6.0 + 1.0 / 24.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(asym_context(0), DomainError);
}

TEST_CASE("a coefficients") {
  CHECK(a_coeff(0, half(7)) == 1);
  CHECK(a_coeff(1, half(1)) == 0);
  CHECK(a_coeff(1, half(-3)) == 1);
  for (int twice = -21; twice <= 21; twice += 2)
    for (int j = 0; j <= 6; ++j) CHECK(a_coeff(j, half(twice)) == a_by_hand(j, Rational(twice, 2)));
}

TEST_CASE("gamma coefficients") {
  CHECK(gamma_coeff(0, half(-5), 0) == 1);
  // independent alternating sum for gamma_2(-5/2, 4)
  Rational expected = 0;
  const int binom4[] = {1, 4, 6, 4, 1};
  for (int h = 0; h <= 4; ++h) {
    const Rational term = binom4[h] * a_by_hand(2, Rational(-5, 2) + 4 - h);
    expected += (h % 2 == 0) ? term : Rational(-term);
  }
  CHECK(gamma_coeff(2, half(-5), 4) == expected);
  CHECK(expected == 3);
}

TEST_CASE("gamma_1 closed forms at random half-integers") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> pick(-40, 40);
  for (int i = 0; i < 20; ++i) {
    const HalfInt mu = half(2 * pick(rng) + 1);
    const Rational m = mu.to_rational();
    CHECK(gamma_coeff(1, mu, 0) == (4 * m * m - 1) / 8);
    CHECK(gamma_coeff(1, mu, 1) == (2 * m + 1) / 2);
    CHECK(gamma_coeff(1, mu, 2) == 1);
  }
}

TEST_CASE("c coefficients") {
  CHECK(c_coeff(1, 0) == 1);
  CHECK(c_coeff(2, 0) == 0);
  CHECK(c_coeff(1, 1) == 1);
  CHECK(c_coeff(1, -1) == 1);
  for (int l = 0; l <= 6; ++l) {
    CHECK(c_coeff(2 * l + 1, 0) == Rational(1, 1 << (2 * l)));
    CHECK(c_coeff(2 * l + 2, 0) == 0);
  }
  for (int l = 1; l <= 8; ++l) {
    mpz_class three = 1, two = 1;
    for (int i = 0; i < l; ++i) three *= 3, two *= 2;
    Rational expected(three - 1, two);
    expected.canonicalize();
    if (l % 2 == 0) expected = -expected;
    CHECK(c_coeff(l, 1) == expected);
  }
}

TEST_CASE("coefficient table memo and override") {
  CoeffTables tables;
  CHECK(tables.gamma(1, half(-5), 1) == Rational(-2));
  tables.override_gamma(1, half(-5), 1, Rational(2));
  CHECK(tables.gamma(1, half(-5), 1) == Rational(2));
  CHECK(CoeffTables::shared().gamma(1, half(-5), 1) == Rational(-2));
}

TEST_CASE("logistic derivative polynomials") {
  CHECK(logistic_deriv(0, 0.0) == doctest::Approx(0.5));
  CHECK(logistic_deriv(1, 0.0) == doctest::Approx(-0.25));
  CHECK(std::abs(logistic_deriv(2, 0.0)) < 1e-30);
  CHECK(logistic_deriv(3, 0.0) == doctest::Approx(1.0 / 8.0));
  CHECK(logistic_deriv(5, 0.0) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(logistic_deriv(65, 0.0), BudgetError);
  for (int r = 0; r <= 30; ++r) {
    const auto& poly = LogisticDerivPoly::get(r);
    CHECK(poly.coeffs().size() == static_cast<std::size_t>(r + 2));
    CHECK(poly.coeffs().back() != 0);
    if (r >= 1) {
      BigInt at_one = 0;
      for (const auto& c : poly.coeffs()) at_one += c;
      CHECK(poly.coeffs()[0] == 0);
      CHECK(at_one == 0);
    }
  }
  // no overflow far from the origin
  CHECK(logistic_deriv(0, 800.0) == doctest::Approx(std::exp(-800.0)).epsilon(1e-10));
  CHECK(logistic_deriv(0, -800.0) == doctest::Approx(1.0));
}

TEST_CASE("logistic derivatives match finite differences") {
  const double h = 1e-5;
  for (int r = 1; r <= 3; ++r)
    for (double w : {-2.0, 0.0, 1.5}) {
      const double fd = (logistic_deriv(r - 1, w + h) - logistic_deriv(r - 1, w - h)) / (2 * h);
      const double exact = logistic_deriv(r, w);
      if (std::abs(exact) < 1e-12)
        CHECK(std::abs(fd) < 1e-8);
      else
        CHECK(std::abs(fd / exact - 1.0) < 1e-4);
    }
}

TEST_CASE("complex logistic derivative agrees with the real one on the axis") {
  for (int r = 0; r <= 6; ++r) {
    const std::complex<double> z = logistic_deriv(r, std::complex<double>(0.7, 0.0));
    CHECK(z.real() == doctest::Approx(logistic_deriv(r, 0.7)).epsilon(1e-14));
    CHECK(std::abs(z.imag()) < 1e-30);
  }
}

TEST_CASE("upsilon operator structure") {
  for (int h = 1; h <= 4; ++h) {
    const UpsilonOperator op = build_upsilon(3, h, 0);
    REQUIRE(op.terms().size() == 1);
    CHECK(op.terms()[0].coeff == 1);
    CHECK(op.terms()[0].w_power == 0);
    CHECK(op.terms()[0].deriv == h);
    CHECK(op.terms()[0].pi_power == 0);
  }

  // (k, h=1, r=1): (k-1/2) d^3 + (3/pi^2)[g(5/2,0) d + g(5/2,1) w d^2 + g(5/2,2) (w^2/2) d^3]
  const int k = 2;
  const UpsilonOperator op = build_upsilon(k, 1, 1);
  const double w = 0.37;
  const double c = 3.0 / (pi * pi);
  const double expected =
      1.5 * logistic_deriv(3, w) +
      c * (gamma_coeff(1, half(5), 0).get_d() * logistic_deriv(1, w) +
           gamma_coeff(1, half(5), 1).get_d() * w * logistic_deriv(2, w) +
           gamma_coeff(1, half(5), 2).get_d() * w * w / 2.0 * logistic_deriv(3, w));
  CHECK(op.apply(w) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("upsilon applied at 0 matches finite differences of the kernel") {
  // Upsilon_{1,1}(k=2) at w = 0 reduces to 1.5 f''' + (3/pi^2) * 3 * f'
  const double h = 1e-3;
  auto f = [](double x) { return 1.0 / (1.0 + std::exp(x)); };
  const double d1 = (f(h) - f(-h)) / (2 * h);
  const double d3 = (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h);
  const double expected = 1.5 * d3 + 9.0 / (pi * pi) * d1;
  CHECK(build_upsilon(2, 1, 1).apply(0.0) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("upsilon application is linear in the term list") {
  for (int k : {1, 2, 5})
    for (int h = 1; h <= 3; ++h)
      for (int r = 0; r <= 3; ++r) {
        const UpsilonOperator op = build_upsilon(k, h, r);
        for (double w : {0.0, 0.8, 3.0}) {
          const Real at(w, 160);
          Real summed(160);
          for (const auto& term : op.terms()) summed += op.apply_term(term, at);
          const double whole = op.apply(at).to_double();
          const double parts = summed.to_double();
          CHECK(std::abs(whole - parts) <= 1e-12 * std::max(1.0, std::abs(whole)));
        }
      }
}

TEST_CASE("j_series leading terms") {
  TruncationOrder p1;
  p1.p = 1;
  for (int h = 1; h <= 4; ++h)
    for (std::int64_t m : {0, 10, 40}) {
      const double w = m * asym_context(2500).beta;
      CHECK(j_series(2, h, m, 2500, p1) == doctest::Approx(logistic_deriv(h, w)).epsilon(1e-14));
    }
  CHECK(j_series(2, 1, 0, 2500, p1) == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("j_series three-term value by hand") {
  // Terms at w = 0 for k = 2, h = 1, using f'(0) = -1/4, f'''(0) = 1/8, f^(5)(0) = -1/4,
  // gamma_1(-5/2,0) = 3, gamma_1(-7/2,0) = 6, gamma_2(-5/2,0) = 3.
  const double beta = asym_context(2500).beta;
  const double u0 = -0.25;
  const double u1 = 3.0 / 16.0 - 9.0 / (4.0 * pi * pi);
  const double u2 = 2.0 * (-9.0 / 32.0 + 27.0 / (8.0 * pi * pi) - 27.0 / (4.0 * std::pow(pi, 4)));
  const double expected = u0 - beta * u1 + beta * beta / 2.0 * u2;
  CHECK(j_series(2, 1, 0, 2500) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("krank_asym against exact counts") {
  const BigInt exact = krank_count(2, 0, 2500, table());
  const LogReal approx = krank_asym(2, 0, 2500);
  CHECK(std::abs(approx.ratio(LogReal::from_bigint(exact)) - 1.0) <= 0.01);

  for (std::int64_t m : {10, 50}) {
    const LogReal a = krank_asym(2, m, 2500);
    CHECK(std::abs(a.ratio(LogReal::from_bigint(krank_count(2, m, 2500, table()))) - 1.0) <= 0.01);
  }

  // defaults are far tighter than 1% in this regime
  for (std::int64_t m : {0, 10, 50, 80}) {
    const LogReal a = krank_asym(2, m, 2500);
    CHECK(std::abs(a.ratio(LogReal::from_bigint(krank_count(2, m, 2500, table()))) - 1.0) <= 1e-6);
  }

  // N_1(0, n) / p(n) against beta_n / 4
  const double beta = asym_context(10'000).beta;
  const double r = krank_asym(1, 0, 10'000).ratio(LogReal::from_bigint(table().p(10'000)));
  CHECK(std::abs(r / (beta / 4.0) - 1.0) <= 0.10);

  // the j-shifted form reproduces neighbouring counts
  for (int j : {-1, 1, 2}) {
    const LogReal shifted = krank_asym(2, 20, 2500, j);
    const BigInt ex = krank_count(2, 20 + j, 2500, table());
    CHECK(std::abs(shifted.ratio(LogReal::from_bigint(ex)) - 1.0) <= 0.01);
  }
}

TEST_CASE("krank_asym domain and diagnostics") {
  CHECK_THROWS_AS(krank_asym(2, -1, 2500), DomainError);
  CHECK_THROWS_AS(krank_asym(2, 0, 2500, -1), DomainError);
  CHECK_THROWS_AS(krank_asym(2, 5, 2500, 3), DomainError);
  std::string note;
  krank_asym(2, 1000, 2500, 0, {}, &note);
  CHECK(note.find("exceeds") != std::string::npos);
  note.clear();
  krank_asym(2, 5, 2500, 0, {}, &note);
  CHECK(note.empty());
  TruncationOrder bad;
  bad.p = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("closed-form right-hand sides") {
  const double n = 2500;
  const double beta = asym_context(2500).beta;
  CHECK(sech_ratio(0, 2500) == doctest::Approx(pi / (4 * std::sqrt(6 * n))).epsilon(1e-15));
  const double x = pi * 50 / (2 * std::sqrt(6e4));
  CHECK(sech_ratio(50, 10'000) ==
        doctest::Approx(pi / (4 * std::sqrt(6e4)) / (std::cosh(x) * std::cosh(x))).epsilon(1e-14));

  CHECK(lc_rhs(0, 2500) == doctest::Approx(beta * beta / 2 + 3 * std::pow(beta, 3) / (pi * pi)).epsilon(1e-14));
  CHECK(lc_rhs(500, 2500, LcVariant::kLargeM) ==
        doctest::Approx(3 * std::pow(asym_context(2000).beta, 3) / (pi * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(lc_rhs(2500, 2500), DomainError);

  CHECK(disc_rhs(2, 0, 2500) ==
        doctest::Approx((1.0 / 32 + 3 * beta / (16 * pi * pi)) * beta * beta).epsilon(1e-14));

  CHECK(mono_rhs(0, 2500) == doctest::Approx(0.25 * std::tanh(pi / (4 * std::sqrt(6 * n)))).epsilon(1e-14));
  const double e = std::exp(-pi * 10 / std::sqrt(6 * n));
  CHECK(mono_rhs(10, 2500) ==
        doctest::Approx(std::tanh(pi * 21 / (4 * std::sqrt(6 * n))) / ((1 + e) * (1 + e))).epsilon(1e-14));
  CHECK(mono_rhs(100000, 10) == doctest::Approx(1.0).epsilon(1e-12));

  for (std::int64_t m : {1, 7, 60, 300}) {
    CHECK(sech_ratio(m, 2500) == sech_ratio(-m, 2500));
    CHECK(disc_rhs(2, m, 2500) == disc_rhs(2, -m, 2500));
    CHECK(lc_rhs(m, 2500) == lc_rhs(-m, 2500));
    CHECK(lc_rhs(m, 2500, LcVariant::kSmallM) == lc_rhs(-m, 2500, LcVariant::kSmallM));
  }
}

TEST_CASE("log real arithmetic") {
  const LogReal a = LogReal::from_double(3.0);
  const LogReal b = LogReal::from_double(-5.0);
  CHECK((a * b).to_double() == doctest::Approx(-15.0));
  CHECK((a + b).to_double() == doctest::Approx(-2.0));
  CHECK((a - a).is_zero());
  CHECK((b / a).to_double() == doctest::Approx(-5.0 / 3.0));
  const LogReal huge(1, 5000.0);
  CHECK((huge * huge).log_magnitude() == doctest::Approx(10000.0));
  CHECK(huge.ratio(LogReal(1, 4999.0)) == doctest::Approx(std::exp(1.0)));
  CHECK(static_cast<double>(log_abs_bigint(table().p(10'000))) ==
        doctest::Approx(std::log(table().p(10'000).get_d())).epsilon(1e-15));
  CHECK_THROWS(LogReal(1, std::numeric_limits<double>::infinity()));
}
