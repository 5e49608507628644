#pragma once

// Uniform asymptotic expansion of N_k(m+j, n) and the closed-form
// right-hand sides it is compared against.

#include <cstdint>
#include <string>

#include "krank/coefficients.hpp"
#include "krank/log_real.hpp"
#include "krank/real.hpp"

namespace krank {

/// beta_n = pi / sqrt(6(n - 1/24)), lambda_n = pi sqrt((n - 1/24)/6).
struct AsymContext {
  std::int64_t n = 1;
  double beta = 0.0;
  double lambda = 0.0;
};

AsymContext asym_context(std::int64_t n);
/// beta for a real argument n - 1/24 = x; used when n is not an integer.
double beta_of(double n);

struct TruncationOrder {
  int p = 3;       // terms r < p in each J_{k,h}
  int h_max = 5;   // terms 1 <= h <= h_max
  int bits = 128;  // working precision for cancellation-prone sums

  void validate() const;
};

/// J_{k,h}(m, n) truncated at r < ord.p, evaluated at w = m beta_n.
double j_series(int k, int h, std::int64_t m, std::int64_t n, const TruncationOrder& ord = {},
                const CoeffTables& tables = CoeffTables::shared());
Real j_series_real(int k, int h, std::int64_t m, std::int64_t n, const TruncationOrder& ord,
                   const CoeffTables& tables = CoeffTables::shared());

/// Asymptotic N_k(m+j, n) in log space. Requires m >= 0, m + j >= 0,
/// |j| <= 2. When diagnostic is non-null it receives regime warnings.
LogReal krank_asym(int k, std::int64_t m, std::int64_t n, int j = 0, const TruncationOrder& ord = {},
                   std::string* diagnostic = nullptr,
                   const CoeffTables& tables = CoeffTables::shared());

/// (pi / (4 sqrt(6n))) sech^2(pi m / (2 sqrt(6n)))
double sech_ratio(std::int64_t m, std::int64_t n);

enum class LcVariant { kCombined, kSmallM, kLargeM };

/// Closed forms for -Delta_m^2 log N_k(m, n).
double lc_rhs(std::int64_t m, std::int64_t n, LcVariant variant = LcVariant::kCombined);

/// Leading closed form of the normalized discriminant L_k(m, n).
double disc_rhs(int k, std::int64_t m, std::int64_t n);

/// (1 + e^{-pi|m|/sqrt(6n)})^{-2} tanh(pi(2m+1)/(4 sqrt(6n)))
double mono_rhs(std::int64_t m, std::int64_t n);

/// log of the normalizer 3 beta_n^6 e^{4 Lambda_n} / (2 pi^2)^2 used by L_k.
double log_disc_normalizer(std::int64_t n);

}  // namespace krank
