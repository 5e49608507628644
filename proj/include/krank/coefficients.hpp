#pragma once

// Exact rational coefficient tables for the Bessel and theta expansions.

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "krank/exact_core.hpp"

namespace krank {

/// A half-integer (or integer) stored as twice its value.
struct HalfInt {
  int twice = 0;

  static constexpr HalfInt from_twice(int t) { return HalfInt{t}; }
  static constexpr HalfInt from_int(int v) { return HalfInt{2 * v}; }

  constexpr bool is_half_integer() const { return twice % 2 != 0; }
  constexpr HalfInt operator+(int v) const { return HalfInt{twice + 2 * v}; }
  constexpr HalfInt operator-(int v) const { return HalfInt{twice - 2 * v}; }
  constexpr HalfInt operator-() const { return HalfInt{-twice}; }
  constexpr auto operator<=>(const HalfInt&) const = default;

  Rational to_rational() const { return Rational(twice, 2); }
  double to_double() const { return twice / 2.0; }
  std::string str() const;
};

/// a_j(mu) = prod_{s=1}^{j} ((2 mu)^2 - (2s-1)^2) / (8^j j!)
Rational a_coeff(int j, HalfInt mu);

/// gamma_l(mu, nu) = sum_{h=0}^{nu} (-1)^h C(nu, h) a_l(mu + nu - h)
Rational gamma_coeff(int l, HalfInt mu, int nu);

/// c_l(j) = (1/2 - j)^l - (-1)^l (1/2 + j)^l
Rational c_coeff(int l, int j);

BigInt binomial(int n, int k);
BigInt factorial(int n);

/// Thread-safe memo of a_j, gamma_l and c_l. Lookups are shared-locked;
/// misses compute outside the lock and insert under a unique lock.
class CoeffTables {
 public:
  const Rational& a(int j, HalfInt mu) const;
  const Rational& gamma(int l, HalfInt mu, int nu) const;
  const Rational& c(int l, int j) const;

  /// Replace a gamma entry. Used by the verification harness to check that a
  /// corrupted table is detected.
  void override_gamma(int l, HalfInt mu, int nu, Rational value);

  /// Process-wide instance used by the expansion code.
  static CoeffTables& shared();

 private:
  mutable std::shared_mutex mutex_;
  mutable std::map<std::tuple<int, int>, Rational> a_;
  mutable std::map<std::tuple<int, int, int>, Rational> gamma_;
  mutable std::map<std::tuple<int, int>, Rational> c_;
};

}  // namespace krank
