#pragma once

// Direct-summation checks of the q-series asymptotics the expansion is built
// from: false theta functions, H_{k,m,j}(e^{-z}) and 1/(e^{-z};e^{-z})_inf.

#include <complex>
#include <cstdint>
#include <vector>

#include "krank/coefficients.hpp"

namespace krank {

using Complex = std::complex<double>;

struct SeriesComparison {
  Complex exact;      // summed to convergence
  Complex expansion;  // truncated asymptotic expansion
  double scale = 0.0; // size of the first omitted order
  int terms = 0;      // series terms summed

  double abs_error() const { return std::abs(exact - expansion); }
};

/// LHS  = sum_{n>=1} (-1)^{n-1} n^l e^{-n^2 z - b n z}
/// RHS  = (-1)^l sum_{h<p} ((-z)^h/h!) f^{(2h+l)}(b z),  f = 1/(1+e^w)
/// scale = |z|^p e^{-b Re z}
/// Needs Re z > 0, |Im z| <= Re z, b >= 0, l >= 0, p >= 1.
SeriesComparison false_theta_compare(int l, double b, Complex z, int p);

/// Coefficient of f^{(l)}(mz) in the expansion of H_{k,m,j}(e^{-z}):
///   sum_{h>=1, h+2s=l} (c_h(j)/h!) ((k-1/2)^s/s!) (-z)^{s+h}
Complex h_kmj_poly(int k, int j, int l, Complex z,
                   const CoeffTables& tables = CoeffTables::shared());

/// exact = sum_{n>=1} (-1)^{n-1} e^{-z((k-1/2)n^2 + mn + jn)} (e^{nz/2} - e^{-nz/2})
/// expansion = sum_{1<=l<=L} P_l(z) f^{(l)}(mz),  scale = |z|^{ceil((L+2)/2)} e^{-m Re z}
/// Needs k >= 1, m >= 0, m + j >= 0, 0 < Re z <= 0.1, |Im z| <= Re z, L >= 1.
SeriesComparison h_kmj_compare(int k, std::int64_t m, int j, Complex z, int L,
                               const CoeffTables& tables = CoeffTables::shared());

struct EtaComparison {
  Complex exact;       // prod_{n<=N} 1/(1 - e^{-nz}); may be inf if it overflows a double
  Complex main_term;   // (z^{1/2}/sqrt(2 pi)) e^{-z/24 + pi^2/(6z)}
  double abs_difference = 0.0;  // |exact - main_term|, computed before rounding
  double relative_deviation = 0.0;
  double additive_bound = 0.0;  // |z|^{1/2}
  std::int64_t factors = 0;
};

/// Needs 0 < Re z <= 0.25 and |Im z| <= (Re z)^{1/2}. N = 0 picks the
/// truncation automatically; an explicit N that leaves the tail above working
/// precision is a domain error.
EtaComparison eta_inv_compare(Complex z, std::int64_t N = 0);

}  // namespace krank
