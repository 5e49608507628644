#include "krank/log_real.hpp"

#include <cstdio>
#include <limits>

#include "krank/errors.hpp"

namespace krank {

LogReal::LogReal(int sign, double log_magnitude)
    : sign_(sign > 0 ? 1 : (sign < 0 ? -1 : 0)), log_mag_(sign == 0 ? 0.0 : log_magnitude) {
  if (sign_ != 0 && !std::isfinite(log_mag_)) {
    if (log_mag_ < 0) {
      sign_ = 0;
      log_mag_ = 0.0;
    } else {
      throw DomainError("LogReal magnitude is infinite or NaN");
    }
  }
}

LogReal LogReal::from_double(double x) {
  if (x == 0.0) return {};
  return {x > 0 ? 1 : -1, std::log(std::abs(x))};
}

LogReal LogReal::from_bigint(const mpz_class& x) {
  const int s = sgn(x);
  if (s == 0) return {};
  return {s, static_cast<double>(log_abs_bigint(x))};
}

double LogReal::ratio(const LogReal& other) const {
  if (other.sign_ == 0) return std::numeric_limits<double>::quiet_NaN();
  if (sign_ == 0) return 0.0;
  return sign_ * other.sign_ * std::exp(log_mag_ - other.log_mag_);
}

std::string LogReal::str() const {
  if (sign_ == 0) return "0";
  const double log10 = log_mag_ / std::log(10.0);
  const double exponent = std::floor(log10);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.15ge%+.0f", sign_ < 0 ? "-" : "",
                std::pow(10.0, log10 - exponent), exponent);
  return buf;
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return {};
  return {a.sign_ * b.sign_, a.log_mag_ + b.log_mag_};
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.sign_ == 0) throw DomainError("LogReal division by zero");
  if (a.sign_ == 0) return {};
  return {a.sign_ * b.sign_, a.log_mag_ - b.log_mag_};
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  const LogReal& big = a.log_mag_ >= b.log_mag_ ? a : b;
  const LogReal& small = a.log_mag_ >= b.log_mag_ ? b : a;
  const double t = std::exp(small.log_mag_ - big.log_mag_);
  if (a.sign_ == b.sign_) return {big.sign_, big.log_mag_ + std::log1p(t)};
  if (t == 1.0) return {};
  return {big.sign_, big.log_mag_ + std::log1p(-t)};
}

long double log_abs_bigint(const mpz_class& x) {
  if (sgn(x) == 0) throw DomainError("log of zero");
  const mpz_class a = abs(x);
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  if (bits <= 53) return std::log(static_cast<long double>(mpz_get_d(a.get_mpz_t())));
  const std::size_t shift = bits > 64 ? bits - 64 : 0;
  mpz_class top;
  mpz_tdiv_q_2exp(top.get_mpz_t(), a.get_mpz_t(), shift);
  // top fits in 64 bits exactly.
  unsigned long long hi = 0;
  mpz_export(&hi, nullptr, -1, sizeof hi, 0, 0, top.get_mpz_t());
  return std::log(static_cast<long double>(hi)) +
         static_cast<long double>(shift) * 0.693147180559945309417232121458176568L;
}

}  // namespace krank
