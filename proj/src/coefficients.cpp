#include "krank/coefficients.hpp"

#include "krank/errors.hpp"

namespace krank {

std::string HalfInt::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

BigInt factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative number");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational a_coeff(int j, HalfInt mu) {
  if (j < 0) throw DomainError("a_j needs j >= 0");
  const BigInt two_mu_sq = BigInt(mu.twice) * mu.twice;
  BigInt num = 1;
  for (int s = 1; s <= j; ++s) num *= two_mu_sq - BigInt(2 * s - 1) * (2 * s - 1);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 8, static_cast<unsigned long>(j));
  den *= factorial(j);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational gamma_coeff(int l, HalfInt mu, int nu) {
  if (l < 0 || nu < 0) throw DomainError("gamma_l(mu, nu) needs l, nu >= 0");
  Rational sum = 0;
  for (int h = 0; h <= nu; ++h) {
    const Rational term = Rational(binomial(nu, h)) * a_coeff(l, mu + (nu - h));
    if (h % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

Rational c_coeff(int l, int j) {
  if (l < 1) throw DomainError("c_l(j) needs l >= 1");
  const Rational minus(1 - 2 * j, 2);
  const Rational plus(1 + 2 * j, 2);
  Rational lhs = 1, rhs = 1;
  for (int i = 0; i < l; ++i) {
    lhs *= minus;
    rhs *= plus;
  }
  return l % 2 == 0 ? Rational(lhs - rhs) : Rational(lhs + rhs);
}

namespace {

template <typename Map, typename Key, typename Compute>
const Rational& memo_lookup(std::shared_mutex& mutex, Map& map, const Key& key, Compute compute) {
  {
    std::shared_lock lock(mutex);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  Rational value = compute();
  std::unique_lock lock(mutex);
  // std::map references stay valid across later inserts.
  return map.try_emplace(key, std::move(value)).first->second;
}

}  // namespace

const Rational& CoeffTables::a(int j, HalfInt mu) const {
  return memo_lookup(mutex_, a_, std::tuple{j, mu.twice}, [&] { return a_coeff(j, mu); });
}

const Rational& CoeffTables::gamma(int l, HalfInt mu, int nu) const {
  return memo_lookup(mutex_, gamma_, std::tuple{l, mu.twice, nu}, [&] {
    Rational sum = 0;
    for (int h = 0; h <= nu; ++h) {
      const Rational term = Rational(binomial(nu, h)) * a(l, mu + (nu - h));
      if (h % 2 == 0)
        sum += term;
      else
        sum -= term;
    }
    return sum;
  });
}

const Rational& CoeffTables::c(int l, int j) const {
  return memo_lookup(mutex_, c_, std::tuple{l, j}, [&] { return c_coeff(l, j); });
}

void CoeffTables::override_gamma(int l, HalfInt mu, int nu, Rational value) {
  std::unique_lock lock(mutex_);
  gamma_[std::tuple{l, mu.twice, nu}] = std::move(value);
}

CoeffTables& CoeffTables::shared() {
  static CoeffTables tables;
  return tables;
}

}  // namespace krank
