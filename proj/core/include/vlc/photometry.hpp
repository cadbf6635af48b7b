#pragma once

#include <cstddef>
#include <vector>

#include "vlc/geometry.hpp"
#include "vlc/scenario.hpp"

namespace vlc {

/// Dimming state of the luminaires, stored as the OPPM duty cycle w/n.
/// Perceived brightness is 100 * sqrt(duty cycle) percent.
class DimmingLevel {
 public:
  static DimmingLevel from_duty_cycle(double duty_cycle);
  static DimmingLevel from_perceived(double percent);

  double duty_cycle() const { return duty_cycle_; }
  double perceived_percent() const;

 private:
  explicit DimmingLevel(double duty) : duty_cycle_(duty) {}
  double duty_cycle_;
};

/// Horizontal illuminance (lux) on an upward-facing surface at `point`.
/// Each LED radiates I0 cos^m(phi); LEDs at or below the plane contribute
/// nothing. Throws DomainError for points outside the room.
double illuminance_at(const ScenarioConfig& config, const Vec3& point, DimmingLevel dimming);

/// Same, restricted to one fixture.
double fixture_illuminance(const Fixture& fixture, const Vec3& point, DimmingLevel dimming);

/// Regular map on a horizontal plane. Nodes sit at multiples of the step,
/// from 0 to the room extent inclusive.
struct IlluminanceMap {
  double plane_height = 0.0;
  double step = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> lux;  // row-major: lux[iy * xs.size() + ix]

  double at(std::size_t ix, std::size_t iy) const { return lux[iy * xs.size() + ix]; }
  double min() const;
  double max() const;
  /// (x, y) of the maximum; first occurrence in row-major order.
  std::pair<double, double> argmax() const;
  /// Fraction of nodes whose value lies in [lo, hi].
  double compliant_fraction(double lo, double hi) const;
};

/// Throws DomainError unless 0 < plane_height < room height and step > 0.
IlluminanceMap illuminance_map(const ScenarioConfig& config, double plane_height,
                               DimmingLevel dimming, double grid_step, unsigned threads = 0);

struct DimmingInterval {
  bool empty = true;
  double full_on_lux = 0.0;   // illuminance at duty cycle 1
  double low_percent = 0.0;   // perceived brightness, rounded to 0.1 %
  double high_percent = 0.0;
};

/// Perceived-brightness range for which illuminance at `point` stays in
/// [lux_min, lux_max]. Solved analytically from the linearity of
/// illuminance in the duty cycle.
DimmingInterval dimming_interval(const ScenarioConfig& config, const Vec3& point, double lux_min,
                                 double lux_max);

}  // namespace vlc
