#pragma once

namespace vlc {

/// Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt 2).
double q_function(double x);

/// Inverse of q_function on (0, 1). Bracketing bisection followed by Newton
/// polishing; relative round-trip error below 1e-12 on [1e-300, 0.5].
/// Throws DomainError outside (0, 1).
double q_inverse(double p);

}  // namespace vlc
