#include "krank/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "krank/errors.hpp"

namespace krank {

namespace {

constexpr int kMaxWorkingBits = 1 << 15;

void check_order(HalfInt nu) {
  if (!nu.is_half_integer())
    throw DomainError("bessel_i_halfint needs a half-integer order, got " + nu.str());
  if (std::abs(nu.twice) > kMaxBesselTwiceOrder)
    throw DomainError("bessel_i_halfint order " + nu.str() + " exceeds 41/2");
}

// Sum that remembers the largest binary exponent among its terms, so the
// number of bits lost to cancellation can be read off afterwards.
class TrackedSum {
 public:
  explicit TrackedSum(mpfr_prec_t bits) : sum_(bits) {}
  void add(const Real& term) {
    if (term.is_zero()) return;
    max_exp_ = seen_ ? std::max(max_exp_, term.exponent2()) : term.exponent2();
    seen_ = true;
    sum_ += term;
  }
  const Real& value() const { return sum_; }
  long lost_bits() const {
    if (!seen_) return 0;
    if (sum_.is_zero()) return sum_.prec();
    return std::max(0L, max_exp_ - sum_.exponent2());
  }

 private:
  Real sum_;
  long max_exp_ = 0;
  bool seen_ = false;
};

// Adds sqrt(2 pi u) e^{-u} I_nu(u) * weight into acc:
//   sum_{k<=n} (-1)^k a_k/u^k + sigma e^{-2u} sum_{k<=n} a_k/u^k,
// n = |nu| - 1/2, sigma = (-1)^{n+1} for nu > 0 and (-1)^n for nu < 0.
void add_scaled_bessel(TrackedSum& acc, HalfInt nu, const Real& u, const Real& damp,
                       const Rational& weight, const CoeffTables& tables) {
  const mpfr_prec_t bits = u.prec();
  const HalfInt order = HalfInt::from_twice(std::abs(nu.twice));
  const int n = (order.twice - 1) / 2;
  const bool sigma_positive = (nu.twice > 0) ? ((n + 1) % 2 == 0) : (n % 2 == 0);
  const Real w(weight, bits);
  Real inv_pow(1.0, bits);
  const Real inv_u = Real(1.0, bits) / u;
  for (int k = 0; k <= n; ++k) {
    const Real term = Real(tables.a(k, order), bits) * inv_pow * w;
    acc.add(k % 2 == 0 ? term : -term);
    const Real tail = term * damp;
    acc.add(sigma_positive ? tail : -tail);
    inv_pow *= inv_u;
  }
}

}  // namespace

Real bessel_i_halfint_scaled(HalfInt nu, double u, int min_bits) {
  check_order(nu);
  if (!(u > 0.0)) throw DomainError("bessel_i_halfint needs u > 0");
  const CoeffTables& tables = CoeffTables::shared();
  for (mpfr_prec_t bits = min_bits + 32; bits <= kMaxWorkingBits; bits *= 2) {
    const Real uu(u, bits);
    const Real damp = exp(Real(-2.0, bits) * uu);
    TrackedSum acc(bits);
    add_scaled_bessel(acc, nu, uu, damp, Rational(1), tables);
    if (bits - acc.lost_bits() >= min_bits) return acc.value();
  }
  throw PrecisionError("I_" + nu.str() + "(" + std::to_string(u) +
                       ") needs more than the maximum working precision");
}

LogReal bessel_i_halfint(HalfInt nu, double u, int min_bits) {
  const Real scaled = bessel_i_halfint_scaled(nu, u, min_bits);
  if (scaled.is_zero()) return {};
  // I = scaled * e^u / sqrt(2 pi u)
  const double log_front = u - 0.5 * std::log(2.0 * std::numbers::pi * u);
  return LogReal(scaled.sign(), scaled.log_abs() + log_front);
}

HHatResult h_hat(HalfInt mu, int nu, double u, int L, int min_bits, const CoeffTables& tables) {
  if (nu < 0 || nu > 8) throw DomainError("h_hat supports 0 <= nu <= 8");
  if (L < 1) throw DomainError("h_hat needs L >= 1");
  if (!(u > 0.0)) throw DomainError("h_hat needs u > 0");
  for (int h = 0; h <= nu; ++h) check_order(mu + (nu - h));

  HHatResult result;
  bool certified = false;
  for (mpfr_prec_t bits = min_bits + 32; bits <= kMaxWorkingBits; bits *= 2) {
    const Real uu(u, bits);
    const Real damp = exp(Real(-2.0, bits) * uu);
    TrackedSum acc(bits);
    for (int h = 0; h <= nu; ++h) {
      Rational weight(binomial(nu, h));
      if (h % 2 == 1) weight = -weight;
      add_scaled_bessel(acc, mu + (nu - h), uu, damp, weight, tables);
    }
    if (bits - acc.lost_bits() >= min_bits) {
      result.exact = acc.value().to_double();
      result.working_bits = static_cast<int>(bits);
      certified = true;
      break;
    }
  }
  if (!certified)
    throw PrecisionError("Hhat_{" + mu.str() + "," + std::to_string(nu) +
                         "} could not be certified at the maximum working precision");

  const int start = (nu + 1) / 2;
  Real series(static_cast<mpfr_prec_t>(min_bits));
  const Real uu(u, min_bits);
  for (int l = start; l <= L; ++l) {
    const Real term = Real(tables.gamma(l, mu, nu), min_bits) / pow(uu, l);
    series += (l % 2 == 0) ? term : -term;
  }
  result.series = series.to_double();

  Rational next = tables.gamma(L + 1, mu, nu);
  if (next == 0) next = 1;
  result.first_omitted = (Real(abs(next), min_bits) / pow(uu, L + 1)).to_double();
  return result;
}

}  // namespace krank
