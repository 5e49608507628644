#include "krank/upsilon.hpp"

#include <algorithm>
#include <map>

#include "krank/errors.hpp"
#include "krank/logistic.hpp"

namespace krank {

int UpsilonOperator::max_derivative() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.deriv);
  return d;
}

namespace {

Real three_over_pi_sq(mpfr_prec_t bits) {
  const Real pi = Real::pi(bits);
  return Real(3.0, bits) / (pi * pi);
}

}  // namespace

Real UpsilonOperator::apply_term(const UpsilonTerm& term, const Real& w) const {
  const mpfr_prec_t bits = w.prec();
  Real value = Real(term.coeff, bits) * pow(three_over_pi_sq(bits), term.pi_power);
  if (term.w_power > 0) value *= pow(w, term.w_power);
  return value * logistic_deriv(term.deriv, w);
}

Real UpsilonOperator::apply(const Real& w) const {
  const mpfr_prec_t bits = w.prec();
  const Real c = three_over_pi_sq(bits);
  std::map<int, Real> derivs;
  Real sum(bits);
  for (const auto& term : terms_) {
    auto it = derivs.find(term.deriv);
    if (it == derivs.end()) it = derivs.emplace(term.deriv, logistic_deriv(term.deriv, w)).first;
    Real value = Real(term.coeff, bits) * it->second;
    if (term.pi_power > 0) value *= pow(c, term.pi_power);
    if (term.w_power > 0) value *= pow(w, term.w_power);
    sum += value;
  }
  return sum;
}

double UpsilonOperator::apply(double w) const { return apply(Real(w, Real::kDefaultBits)).to_double(); }

UpsilonOperator build_upsilon(int k, int h, int r, const CoeffTables& tables) {
  if (k < 1) throw DomainError("build_upsilon needs k >= 1");
  if (h < 0 || r < 0) throw DomainError("build_upsilon needs h, r >= 0");
  std::vector<UpsilonTerm> terms;
  const Rational k_half = Rational(2 * k - 1, 2);
  const Rational r_fact = Rational(factorial(r));
  for (int s = 0; s <= r; ++s) {
    const int l = r - s;
    Rational ks = 1;
    for (int i = 0; i < s; ++i) ks *= k_half;
    const Rational prefix = r_fact * ks / Rational(factorial(s));
    const HalfInt mu = HalfInt::from_twice(-2 * s - 2 * h - 3);
    for (int v = 0; v <= 2 * l; ++v) {
      // The contour integral of w^{-mu-1}(w-1)^v picks up I_{mu-v+h}, whose
      // expansion coefficients are gamma_l(-mu, v) in the tabulated convention.
      const Rational& g = tables.gamma(l, -mu, v);
      if (g == 0) continue;
      Rational coeff = prefix * g / Rational(factorial(v));
      terms.push_back(UpsilonTerm{std::move(coeff), l, v, v + h + 2 * s});
    }
  }
  return UpsilonOperator(k, h, r, std::move(terms));
}

}  // namespace krank
