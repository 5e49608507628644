#pragma once

// Minimal RAII wrapper over MPFR with explicit per-value precision.
// Binary operations round to the larger of the two operand precisions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace krank {

class Real {
 public:
  static constexpr mpfr_prec_t kDefaultBits = 128;

  explicit Real(mpfr_prec_t bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const mpz_class& x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Real& other) {
    mpfr_init2(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept : Real(other.prec()) { mpfr_swap(v_, other.v_); }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, other.prec());
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  /// Natural log of |x| as a double; valid far outside the double exponent range.
  double log_abs() const {
    long exponent = 0;
    const double mantissa = mpfr_get_d_2exp(&exponent, v_, MPFR_RNDN);
    return std::log(std::abs(mantissa)) + static_cast<double>(exponent) * 0.69314718055994530942;
  }
  /// Binary exponent: |x| in [2^(e-1), 2^e).
  long exponent2() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  static Real pi(mpfr_prec_t bits) {
    Real r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { return apply(o, mpfr_add); }
  Real& operator-=(const Real& o) { return apply(o, mpfr_sub); }
  Real& operator*=(const Real& o) { return apply(o, mpfr_mul); }
  Real& operator/=(const Real& o) { return apply(o, mpfr_div); }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(Real a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

  friend Real exp(Real a) { return a.unary(mpfr_exp); }
  friend Real log(Real a) { return a.unary(mpfr_log); }
  friend Real sqrt(Real a) { return a.unary(mpfr_sqrt); }
  friend Real sin(Real a) { return a.unary(mpfr_sin); }
  friend Real cos(Real a) { return a.unary(mpfr_cos); }
  friend Real abs(Real a) { return a.unary(mpfr_abs); }
  friend Real log1p(Real a) { return a.unary(mpfr_log1p); }
  friend Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real pow(Real a, long e) {
    mpfr_pow_si(a.v_, a.v_, e, MPFR_RNDN);
    return a;
  }

 private:
  template <typename Op>
  Real& apply(const Real& o, Op op) {
    if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  template <typename Op>
  Real& unary(Op op) {
    op(v_, v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

/// Complex number over two Real components (only what the comparators need).
struct RealComplex {
  Real re;
  Real im;

  RealComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  RealComplex(std::complex<double> z, mpfr_prec_t bits) : re(z.real(), bits), im(z.imag(), bits) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm()); }
  Real arg() const { return atan2(im, re); }

  friend RealComplex operator+(const RealComplex& a, const RealComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RealComplex operator-(const RealComplex& a, const RealComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RealComplex operator*(const RealComplex& a, const RealComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend RealComplex operator/(const RealComplex& a, const RealComplex& b) {
    const Real d = b.norm();
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend RealComplex exp(const RealComplex& z) {
    const Real scale = exp(z.re);
    return {scale * cos(z.im), scale * sin(z.im)};
  }
  /// Principal square root.
  friend RealComplex sqrt(const RealComplex& z) {
    const Real half(0.5, z.re.prec());
    const Real r = sqrt(z.abs());
    const Real t = z.arg() * half;
    return {r * cos(t), r * sin(t)};
  }
};

}  // namespace krank
