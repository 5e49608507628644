#pragma once

// Derivatives of the logistic kernel f(w) = 1/(1+e^w).
//
// d^r/dw^r f = P_r(f) with P_0(X) = X and P_{r+1}(X) = P_r'(X) (X^2 - X).

#include <complex>
#include <vector>

#include "krank/exact_core.hpp"
#include "krank/real.hpp"

namespace krank {

class LogisticDerivPoly {
 public:
  static constexpr int kMaxOrder = 64;

  /// Cached polynomial for 0 <= r <= kMaxOrder.
  static const LogisticDerivPoly& get(int r);

  int order() const { return order_; }
  /// coeffs()[i] multiplies X^i.
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  Real evaluate(const Real& x) const;
  RealComplex evaluate(const RealComplex& x) const;

  LogisticDerivPoly derivative_step() const;

 private:
  LogisticDerivPoly(int order, std::vector<BigInt> coeffs)
      : order_(order), coeffs_(std::move(coeffs)) {}

  int order_;
  std::vector<BigInt> coeffs_;
};

/// Working precision used for an order-r evaluation (covers the cancellation
/// in P_r near X = 1/2).
mpfr_prec_t logistic_working_bits(int r);

Real logistic(const Real& w);
RealComplex logistic(const RealComplex& w);

double logistic_deriv(int r, double w);
std::complex<double> logistic_deriv(int r, std::complex<double> w);
Real logistic_deriv(int r, const Real& w);

}  // namespace krank
