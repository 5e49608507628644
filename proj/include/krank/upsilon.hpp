#pragma once

// Symbolic differential operators sum c (3/pi^2)^l w^v d^d/dw^d acting on the
// logistic kernel 1/(1+e^w).

#include <vector>

#include "krank/coefficients.hpp"
#include "krank/real.hpp"

namespace krank {

struct UpsilonTerm {
  Rational coeff;     // exact rational part
  int pi_power = 0;   // multiplies by (3/pi^2)^pi_power
  int w_power = 0;    // w^v
  int deriv = 0;      // d^deriv/dw^deriv
};

class UpsilonOperator {
 public:
  UpsilonOperator(int k, int h, int r, std::vector<UpsilonTerm> terms)
      : k_(k), h_(h), r_(r), terms_(std::move(terms)) {}

  int k() const { return k_; }
  int h() const { return h_; }
  int r() const { return r_; }
  const std::vector<UpsilonTerm>& terms() const { return terms_; }
  int max_derivative() const;

  /// (operator f)(w) with f(w) = 1/(1+e^w).
  Real apply(const Real& w) const;
  double apply(double w) const;

  /// Value of a single term at w (used to check linearity).
  Real apply_term(const UpsilonTerm& term, const Real& w) const;

 private:
  int k_, h_, r_;
  std::vector<UpsilonTerm> terms_;
};

/// Upsilon_{h,r}(k) = r! sum_{s+l=r} ((k-1/2)^s / s!) (3/pi^2)^l
///                    sum_{v=0}^{2l} gamma_l(s+h+3/2, v) (w^v / v!) d^{v+h+2s}
/// The Bessel order is mu = -s-h-3/2; the table is read at -mu (see upsilon.cpp).
UpsilonOperator build_upsilon(int k, int h, int r,
                              const CoeffTables& tables = CoeffTables::shared());

}  // namespace krank
