#pragma once

#include <cstdint>

#include "qpe/matrix.hpp"

namespace qpe {

/// QPE phase of an energy: theta = -E*t mod 1, in [0, 1).
double phase_of_energy(double energy, double t);

/// Squared Dirichlet kernel
///   |f(delta)|^2 = sin^2(pi 2^N delta) / (2^{2N} sin^2(pi delta)),
/// periodic with period 1, equal to 1 at integer delta. The 2^N-fold
/// argument is range-reduced exactly (multiplication by 2^N and remainder
/// by 2 are exact in binary floating point) so large-N evaluations keep
/// full precision; a series replaces the denominator when |sin(pi delta)|
/// drops below 1e-8.
double f_kernel_sq(double delta, int n_phase);

/// Complex kernel including the e^{i pi (2^N - 1) delta} factor; this is the
/// exact amplitude the inverse QFT produces, so post-measurement phases come
/// out right. |f_kernel(d,N)|^2 == f_kernel_sq(d,N).
cplx f_kernel(double delta, int n_phase);

/// (1/pi^2) sum_{k=-e}^{e} (1/2 - k)^{-2}: the window lower-bound constant;
/// multiplied by |c_0|^2 it bounds the probability mass in a +-e window
/// around the ground bin. Approaches 1 as e grows.
double window_lower_bound_constant(long long e);

/// Nearest phase bin to theta on the 2^N grid, with wrap-around.
struct NearestBin {
  std::int64_t index;    // in {0, ..., 2^N - 1}
  double kappa;          // in [0, 1]: |theta - l/2^N| = kappa / 2^{N+1}
  double signed_offset;  // 2^N theta - unwrapped bin, in [-1/2, 1/2)
};
NearestBin nearest_bin(double theta, int n_phase);

}  // namespace qpe
