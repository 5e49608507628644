#include "krank/expansion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "krank/errors.hpp"
#include "krank/upsilon.hpp"

namespace krank {

using std::numbers::pi;

AsymContext asym_context(std::int64_t n) {
  if (n < 1) throw DomainError("asym_context needs n >= 1");
  const double shifted = static_cast<double>(n) - 1.0 / 24.0;
  return AsymContext{n, pi / std::sqrt(6.0 * shifted), pi * std::sqrt(shifted / 6.0)};
}

double beta_of(double n) { return pi / std::sqrt(6.0 * (n - 1.0 / 24.0)); }

void TruncationOrder::validate() const {
  if (p < 1) throw ConfigError("truncation p must be >= 1");
  if (h_max < 1) throw ConfigError("truncation h_max must be >= 1");
  if (bits < 53 || bits > 1 << 16) throw ConfigError("mantissa bits must be in [53, 65536]");
}

Real j_series_real(int k, int h, std::int64_t m, std::int64_t n, const TruncationOrder& ord,
                   const CoeffTables& tables) {
  ord.validate();
  if (h < 1) throw DomainError("J_{k,h} needs h >= 1");
  const AsymContext ctx = asym_context(n);
  const mpfr_prec_t bits = ord.bits;
  const Real beta(ctx.beta, bits);
  const Real w = Real(static_cast<double>(m), bits) * beta;
  Real sum(bits);
  Real scale(1.0, bits);  // (-beta)^r / r!
  for (int r = 0; r < ord.p; ++r) {
    if (r > 0) scale = scale * (-beta) / Real(static_cast<double>(r), bits);
    sum += scale * build_upsilon(k, h, r, tables).apply(w);
  }
  return sum;
}

double j_series(int k, int h, std::int64_t m, std::int64_t n, const TruncationOrder& ord,
                const CoeffTables& tables) {
  return j_series_real(k, h, m, n, ord, tables).to_double();
}

LogReal krank_asym(int k, std::int64_t m, std::int64_t n, int j, const TruncationOrder& ord,
                   std::string* diagnostic, const CoeffTables& tables) {
  ord.validate();
  if (m < 0) throw DomainError("krank_asym needs m >= 0 (use |m| by symmetry)");
  if (j < -2 || j > 2) throw DomainError("krank_asym supports j in [-2, 2]");
  if (m + j < 0) throw DomainError("krank_asym needs m + j >= 0");
  const AsymContext ctx = asym_context(n);
  const mpfr_prec_t bits = ord.bits;

  std::ostringstream notes;
  const double regime = static_cast<double>(m) * m * ctx.beta * ctx.beta * ctx.beta;
  if (regime > 0.5) notes << "m^2 beta_n^3 = " << regime << " exceeds 0.5; expansion unreliable. ";

  const Real beta(ctx.beta, bits);
  Real sum(bits);
  Real power(1.0, bits);  // (-beta)^h / h!
  for (int h = 1; h <= ord.h_max; ++h) {
    power = power * (-beta) / Real(static_cast<double>(h), bits);
    const Rational& c = tables.c(h, j);
    if (c == 0) continue;
    sum += Real(c, bits) * power * j_series_real(k, h, m, n, ord, tables);
  }

  if (sum.is_zero()) {
    notes << "all expansion terms cancelled to zero.";
    if (diagnostic) *diagnostic = notes.str();
    return {};
  }
  if (diagnostic) *diagnostic = notes.str();
  // sqrt(3) beta^2 e^{2 Lambda} / (2 pi^2)
  const double log_prefactor = 0.5 * std::log(3.0) + 2.0 * std::log(ctx.beta) -
                               std::log(2.0 * pi * pi) + 2.0 * ctx.lambda;
  return LogReal(sum.sign(), log_prefactor + sum.log_abs());
}

double sech_ratio(std::int64_t m, std::int64_t n) {
  if (n < 1) throw DomainError("sech_ratio needs n >= 1");
  const double root = std::sqrt(6.0 * static_cast<double>(n));
  const double s = 1.0 / std::cosh(pi * static_cast<double>(m) / (2.0 * root));
  return pi / (4.0 * root) * s * s;
}

double lc_rhs(std::int64_t m, std::int64_t n, LcVariant variant) {
  const std::int64_t a = m < 0 ? -m : m;
  if (n - a < 1) throw DomainError("lc_rhs needs n - |m| >= 1");
  const double beta = asym_context(n).beta;
  const double beta_edge = asym_context(n - a).beta;
  const double s = 1.0 / std::cosh(static_cast<double>(a) * beta / 2.0);
  const double front = beta * beta / 2.0 * s * s;
  switch (variant) {
    case LcVariant::kCombined:
      return front + 3.0 / (pi * pi) * beta_edge * beta_edge * beta_edge;
    case LcVariant::kSmallM:
      return front + 3.0 / (pi * pi) * beta * beta * beta;
    case LcVariant::kLargeM:
      return 3.0 / (pi * pi) * beta_edge * beta_edge * beta_edge;
  }
  throw DomainError("unknown lc_rhs variant");
}

double disc_rhs(int k, std::int64_t m, std::int64_t n) {
  if (k < 1) throw DomainError("disc_rhs needs k >= 1");
  const double beta = asym_context(n).beta;
  const double a = static_cast<double>(m < 0 ? -m : m);
  const double s = 1.0 / std::cosh(a * beta / 2.0);
  const double s2 = s * s;
  const double s4 = s2 * s2;
  return (s4 * s2 / 32.0 + 3.0 * beta / (16.0 * pi * pi) * s4) * beta * beta;
}

double mono_rhs(std::int64_t m, std::int64_t n) {
  if (n < 1) throw DomainError("mono_rhs needs n >= 1");
  const double root = std::sqrt(6.0 * static_cast<double>(n));
  const double a = static_cast<double>(m < 0 ? -m : m);
  const double damp = 1.0 + std::exp(-pi * a / root);
  return std::tanh(pi * (2.0 * static_cast<double>(m) + 1.0) / (4.0 * root)) / (damp * damp);
}

double log_disc_normalizer(std::int64_t n) {
  const AsymContext ctx = asym_context(n);
  return std::log(3.0) + 6.0 * std::log(ctx.beta) + 4.0 * ctx.lambda - 2.0 * std::log(2.0 * pi * pi);
}

}  // namespace krank
