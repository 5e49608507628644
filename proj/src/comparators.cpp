#include "krank/comparators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "krank/errors.hpp"
#include "krank/logistic.hpp"
#include "krank/real.hpp"

namespace krank {

namespace {

using std::numbers::pi;

void check_sector(Complex z, double max_re, const char* what) {
  if (!(z.real() > 0.0)) throw DomainError(std::string(what) + " needs Re z > 0");
  if (z.real() > max_re)
    throw DomainError(std::string(what) + " needs Re z <= " + std::to_string(max_re));
  if (std::abs(z.imag()) > z.real()) throw DomainError(std::string(what) + " needs |Im z| <= Re z");
}

RealComplex from_real(const Real& x) { return {x, Real(x.prec())}; }

RealComplex scale_by(const RealComplex& z, const Real& x) { return {z.re * x, z.im * x}; }

// f^{(r)}(w) for complex w at the given precision.
RealComplex logistic_deriv_mp(int r, Complex w, mpfr_prec_t bits) {
  const mpfr_prec_t work = std::max(bits, logistic_working_bits(r));
  return LogisticDerivPoly::get(r).evaluate(logistic(RealComplex(w, work)));
}

// Bits for alternating sums whose value is ~|z|^{order} smaller than the terms.
mpfr_prec_t cancellation_bits(Complex z, int order) {
  return 160 + static_cast<mpfr_prec_t>(std::ceil(order * std::log2(1.0 / std::abs(z))));
}

}  // namespace

SeriesComparison false_theta_compare(int l, double b, Complex z, int p) {
  if (l < 0) throw DomainError("false_theta_compare needs l >= 0");
  if (p < 1) throw DomainError("false_theta_compare needs p >= 1");
  if (!(b >= 0.0) || !std::isfinite(b)) throw DomainError("false_theta_compare needs b >= 0");
  if (!(z.real() > 0.0) || std::abs(z.imag()) > z.real())
    throw DomainError("false_theta_compare needs Re z > 0 and |Im z| <= Re z");

  const mpfr_prec_t bits = cancellation_bits(z, l + p + 2);
  const double x = z.real();
  // Stop once n^l e^{-x(n^2 + b n)} is below 2^{-bits} of e^{-b x}.
  const double cutoff = (bits + 32) * std::numbers::ln2;
  const RealComplex zz(z, bits);
  const Real bb(b, bits);

  SeriesComparison out;
  RealComplex lhs{Real(bits), Real(bits)};
  for (std::int64_t n = 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double decay = x * (nd * nd + b * nd - b) - l * std::log(nd);
    if (n > 1 && decay > cutoff && 2.0 * x * nd * nd > l) break;
    const Real nr(nd, bits);
    const Real exponent_scale = -(nr * nr + bb * nr);
    RealComplex term = exp(scale_by(zz, exponent_scale));
    term = scale_by(term, pow(nr, l));
    lhs = (n % 2 == 1) ? lhs + term : lhs - term;
    out.terms = static_cast<int>(n);
  }

  RealComplex rhs{Real(bits), Real(bits)};
  const RealComplex minus_z{-zz.re, -zz.im};
  RealComplex power = from_real(Real(1.0, bits));  // (-z)^h / h!
  for (int h = 0; h < p; ++h) {
    if (h > 0) power = scale_by(power * minus_z, Real(1.0, bits) / Real(static_cast<double>(h), bits));
    rhs = rhs + power * logistic_deriv_mp(2 * h + l, b * z, bits);
  }
  if (l % 2 == 1) rhs = RealComplex{-rhs.re, -rhs.im};

  out.exact = lhs.to_complex();
  out.expansion = rhs.to_complex();
  out.scale = std::pow(std::abs(z), p) * std::exp(-b * x);
  return out;
}

Complex h_kmj_poly(int k, int j, int l, Complex z, const CoeffTables& tables) {
  const double half = k - 0.5;
  Complex sum = 0.0;
  for (int s = 0; 2 * s < l; ++s) {
    const int h = l - 2 * s;
    const Rational& c = tables.c(h, j);
    if (c == 0) continue;
    const double coeff = c.get_d() / factorial(h).get_d() * std::pow(half, s) / factorial(s).get_d();
    sum += coeff * std::pow(-z, s + h);
  }
  return sum;
}

SeriesComparison h_kmj_compare(int k, std::int64_t m, int j, Complex z, int L,
                               const CoeffTables& tables) {
  if (k < 1) throw DomainError("h_kmj_compare needs k >= 1");
  if (m < 0) throw DomainError("h_kmj_compare needs m >= 0");
  if (m + j < 0) throw DomainError("h_kmj_compare needs m + j >= 0");
  if (L < 1) throw DomainError("h_kmj_compare needs L >= 1");
  check_sector(z, 0.1, "h_kmj_compare");

  const int order = (L + 2 + 1) / 2;
  const mpfr_prec_t bits = cancellation_bits(z, order + 2);
  const double x = z.real();
  const double md = static_cast<double>(m);
  const double cutoff = (bits + 32) * std::numbers::ln2;
  const RealComplex zz(z, bits);
  const Real kh(k - 0.5, bits);
  const Real half(0.5, bits);

  SeriesComparison out;
  RealComplex exact{Real(bits), Real(bits)};
  for (std::int64_t n = 1;; ++n) {
    const double nd = static_cast<double>(n);
    // largest exponent is at q^{-n/2}; compare with the n = 1 term e^{-m x}
    const double decay = x * ((k - 0.5) * nd * nd + (md + j - 0.5) * nd - md);
    if (n > 1 && decay > cutoff) break;
    const Real nr(nd, bits);
    const Real base = kh * nr * nr + Real(md + j, bits) * nr;
    const RealComplex lo = exp(scale_by(zz, -(base - half * nr)));
    const RealComplex hi = exp(scale_by(zz, -(base + half * nr)));
    const RealComplex term = lo - hi;
    exact = (n % 2 == 1) ? exact + term : exact - term;
    out.terms = static_cast<int>(n);
  }

  RealComplex expansion{Real(bits), Real(bits)};
  for (int l = 1; l <= L; ++l) {
    const Complex poly = h_kmj_poly(k, j, l, z, tables);
    if (poly == Complex(0.0)) continue;
    expansion = expansion + RealComplex(poly, bits) * logistic_deriv_mp(l, md * z, bits);
  }

  out.exact = exact.to_complex();
  out.expansion = expansion.to_complex();
  out.scale = std::pow(std::abs(z), order) * std::exp(-md * x);
  return out;
}

EtaComparison eta_inv_compare(Complex z, std::int64_t N) {
  if (!(z.real() > 0.0) || z.real() > 0.25)
    throw DomainError("eta_inv_compare needs 0 < Re z <= 0.25");
  if (std::abs(z.imag()) > std::sqrt(z.real()))
    throw DomainError("eta_inv_compare needs |Im z| <= (Re z)^{1/2}");
  if (N < 0) throw DomainError("eta_inv_compare needs N >= 0");

  const double x = z.real();
  // log|main| is about pi^2 Re(1/z)/6; resolve |z|^{1/2} below it.
  const double log_main = pi * pi * std::real(1.0 / z) / 6.0;
  const mpfr_prec_t bits = 128 + static_cast<mpfr_prec_t>(std::ceil(log_main / std::numbers::ln2));
  const std::int64_t needed =
      static_cast<std::int64_t>(std::ceil((bits + 64) * std::numbers::ln2 / x)) + 1;
  if (N == 0) N = needed;
  if (N < needed)
    throw DomainError("eta_inv_compare truncation N = " + std::to_string(N) +
                      " too small; need at least " + std::to_string(needed));
  const mpfr_prec_t work = bits + 2 * static_cast<mpfr_prec_t>(std::ceil(std::log2(N + 1.0))) + 8;

  const RealComplex zz(z, work);
  const RealComplex one = from_real(Real(1.0, work));
  const RealComplex q = exp(RealComplex{-zz.re, -zz.im});
  RealComplex qn = q;
  RealComplex product = one;
  for (std::int64_t n = 1; n <= N; ++n) {
    product = product * (one - qn);
    qn = qn * q;
  }
  const RealComplex exact = one / product;

  const Real two_pi = Real(2.0, work) * Real::pi(work);
  const Real pi_sq = Real::pi(work) * Real::pi(work);
  const RealComplex inv_z = one / zz;
  const RealComplex exponent =
      scale_by(zz, Real(-1.0, work) / Real(24.0, work)) + scale_by(inv_z, pi_sq / Real(6.0, work));
  const RealComplex main =
      scale_by(sqrt(zz), Real(1.0, work) / sqrt(two_pi)) * exp(exponent);

  const RealComplex diff = exact - main;
  EtaComparison out;
  out.exact = exact.to_complex();
  out.main_term = main.to_complex();
  out.abs_difference = diff.abs().to_double();
  out.relative_deviation = (diff.abs() / main.abs()).to_double();
  out.additive_bound = std::sqrt(std::abs(z));
  out.factors = N;
  return out;
}

}  // namespace krank
