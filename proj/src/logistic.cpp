#include "krank/logistic.hpp"

#include <array>
#include <string>

#include "krank/errors.hpp"

namespace krank {

LogisticDerivPoly LogisticDerivPoly::derivative_step() const {
  // P' * (X^2 - X): coefficient of X^i in P' is (i+1) c_{i+1}.
  const std::size_t deg = coeffs_.size() - 1;
  std::vector<BigInt> next(deg + 2, 0);
  for (std::size_t i = 1; i <= deg; ++i) {
    const BigInt d = coeffs_[i] * static_cast<unsigned long>(i);  // X^{i-1}
    next[i + 1] += d;
    next[i] -= d;
  }
  return LogisticDerivPoly(order_ + 1, std::move(next));
}

const LogisticDerivPoly& LogisticDerivPoly::get(int r) {
  if (r < 0 || r > kMaxOrder)
    throw BudgetError("logistic derivative order " + std::to_string(r) + " outside [0, " +
                      std::to_string(kMaxOrder) + "]");
  static const std::vector<LogisticDerivPoly> cache = [] {
    std::vector<LogisticDerivPoly> polys;
    polys.reserve(kMaxOrder + 1);
    polys.push_back(LogisticDerivPoly(0, {BigInt(0), BigInt(1)}));
    for (int i = 1; i <= kMaxOrder; ++i) polys.push_back(polys.back().derivative_step());
    return polys;
  }();
  return cache[static_cast<std::size_t>(r)];
}

Real LogisticDerivPoly::evaluate(const Real& x) const {
  Real acc(x.prec());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += Real(*it, x.prec());
  }
  return acc;
}

RealComplex LogisticDerivPoly::evaluate(const RealComplex& x) const {
  const mpfr_prec_t bits = x.re.prec();
  RealComplex acc{Real(bits), Real(bits)};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x;
    acc.re += Real(*it, bits);
  }
  return acc;
}

mpfr_prec_t logistic_working_bits(int r) { return 96 + 4 * r; }

Real logistic(const Real& w) {
  const Real one(1.0, w.prec());
  if (w.sign() > 0) {
    const Real e = exp(-w);
    return e / (one + e);
  }
  return one / (one + exp(w));
}

RealComplex logistic(const RealComplex& w) {
  const mpfr_prec_t bits = w.re.prec();
  const RealComplex one{Real(1.0, bits), Real(bits)};
  if (w.re.sign() > 0) {
    const RealComplex e = exp(RealComplex{-w.re, -w.im});
    return e / (one + e);
  }
  return one / (one + exp(w));
}

Real logistic_deriv(int r, const Real& w) {
  const auto& poly = LogisticDerivPoly::get(r);
  Real x(std::max(w.prec(), logistic_working_bits(r)));
  x += w;
  return poly.evaluate(logistic(x));
}

double logistic_deriv(int r, double w) {
  const auto& poly = LogisticDerivPoly::get(r);
  return poly.evaluate(logistic(Real(w, logistic_working_bits(r)))).to_double();
}

std::complex<double> logistic_deriv(int r, std::complex<double> w) {
  const auto& poly = LogisticDerivPoly::get(r);
  return poly.evaluate(logistic(RealComplex(w, logistic_working_bits(r)))).to_complex();
}

}  // namespace krank
