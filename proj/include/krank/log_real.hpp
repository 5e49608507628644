#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

namespace krank {

/// A real number stored as (sign, log|x|) so that quantities like e^{2 Lambda_n}
/// never overflow. Products are exact in log space; sums use log-sum-exp.
class LogReal {
 public:
  LogReal() = default;
  LogReal(int sign, double log_magnitude);

  static LogReal from_double(double x);
  static LogReal from_bigint(const mpz_class& x);

  int sign() const { return sign_; }
  double log_magnitude() const { return log_mag_; }
  bool is_zero() const { return sign_ == 0; }

  /// May overflow to +-inf or underflow to 0.
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_mag_); }

  /// this / other as a double, computed in log space.
  double ratio(const LogReal& other) const;

  std::string str() const;

  friend LogReal operator*(const LogReal& a, const LogReal& b);
  friend LogReal operator/(const LogReal& a, const LogReal& b);
  friend LogReal operator+(const LogReal& a, const LogReal& b);
  friend LogReal operator-(const LogReal& a) { return a.sign_ == 0 ? a : LogReal(-a.sign_, a.log_mag_); }
  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

 private:
  int sign_ = 0;
  double log_mag_ = 0.0;
};

/// log|x| for a nonzero big integer using its top 64 bits (64-bit mantissa).
long double log_abs_bigint(const mpz_class& x);

}  // namespace krank
