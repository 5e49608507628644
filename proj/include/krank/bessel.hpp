#pragma once

// Modified Bessel functions I_nu at half-integer order via their terminating
// closed forms, and the normalized alternating combinations
//   H_{mu,nu}(u)  = sum_h (-1)^h C(nu,h) I_{mu+nu-h}(u),
//   Hhat_{mu,nu}  = sqrt(2 pi u) e^{-u} H_{mu,nu}(u).

#include "krank/coefficients.hpp"
#include "krank/log_real.hpp"
#include "krank/real.hpp"

namespace krank {

constexpr int kMaxBesselTwiceOrder = 41;

/// sqrt(2 pi u) e^{-u} I_nu(u) at >= min_bits effective bits. Adaptive: raises
/// the working precision until the cancellation margin is covered.
Real bessel_i_halfint_scaled(HalfInt nu, double u, int min_bits = 128);

/// I_nu(u) in log space. nu must be a half-integer with |nu| <= 41/2, u > 0.
LogReal bessel_i_halfint(HalfInt nu, double u, int min_bits = 128);

struct HHatResult {
  double exact = 0.0;
  double series = 0.0;
  double first_omitted = 0.0;
  int working_bits = 0;
};

/// Exact Hhat_{mu,nu}(u) against its truncated expansion
///   sum_{ceil(nu/2) <= l <= L} (-1)^l gamma_l(mu,nu) / u^l.
HHatResult h_hat(HalfInt mu, int nu, double u, int L, int min_bits = 128,
                 const CoeffTables& tables = CoeffTables::shared());

}  // namespace krank
