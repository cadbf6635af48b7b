#include "vlc/qfunc.hpp"

#include <cmath>
#include <numbers>

#include "vlc/errors.hpp"

namespace vlc {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("q_inverse requires 0 < p < 1");
  if (p > 0.5) return -q_inverse(1.0 - p);

  // Q is decreasing; Q(0) = 0.5 and Q(40) underflows double precision.
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q_function(mid) > p) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  // Newton on log Q(x) - log p; the log keeps steps well scaled in the tail.
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (int i = 0; i < 8; ++i) {
    const double q = q_function(x);
    if (q <= 0.0) break;
    const double density = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    const double step = (std::log(q) - std::log(p)) * q / density;
    x += step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace vlc
