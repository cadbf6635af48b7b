#include "vlc/photometry.hpp"

#include <algorithm>
#include <cmath>

#include "vlc/channel.hpp"
#include "vlc/errors.hpp"
#include "vlc/parallel.hpp"

namespace vlc {

DimmingLevel DimmingLevel::from_duty_cycle(double duty_cycle) {
  if (!(duty_cycle >= 0.0 && duty_cycle <= 1.0)) {
    throw DomainError("duty cycle must lie in [0, 1]");
  }
  return DimmingLevel(duty_cycle);
}

DimmingLevel DimmingLevel::from_perceived(double percent) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw DomainError("perceived brightness must lie in [0, 100] %");
  }
  const double root = percent / 100.0;
  return DimmingLevel(root * root);
}

double DimmingLevel::perceived_percent() const { return 100.0 * std::sqrt(duty_cycle_); }

namespace {

bool inside_room(const Room& room, const Vec3& p) {
  return p.x >= 0.0 && p.x <= room.width && p.y >= 0.0 && p.y <= room.depth && p.z >= 0.0 &&
         p.z <= room.height;
}

}  // namespace

double fixture_illuminance(const Fixture& fixture, const Vec3& point, DimmingLevel dimming) {
  const double mode = lambertian_mode(fixture.semi_angle_deg);
  CompensatedSum sum;
  for (const Vec3& led : led_positions(fixture)) {
    const Vec3 d = led - point;
    if (d.z <= 0.0) continue;
    const double dist2 = d.dot(d);
    const double cos_angle = d.z / std::sqrt(dist2);
    // Downward LED and upward surface share the same angle to the vertical.
    sum += fixture.center_intensity_cd * std::pow(cos_angle, mode) * cos_angle / dist2;
  }
  return dimming.duty_cycle() * sum.value();
}

double illuminance_at(const ScenarioConfig& config, const Vec3& point, DimmingLevel dimming) {
  if (!inside_room(config.room, point)) throw DomainError("point outside room");
  CompensatedSum sum;
  for (const Fixture& f : config.fixtures) sum += fixture_illuminance(f, point, dimming);
  return sum.value();
}

double IlluminanceMap::min() const { return *std::min_element(lux.begin(), lux.end()); }
double IlluminanceMap::max() const { return *std::max_element(lux.begin(), lux.end()); }

std::pair<double, double> IlluminanceMap::argmax() const {
  const auto idx = static_cast<std::size_t>(std::max_element(lux.begin(), lux.end()) - lux.begin());
  return {xs[idx % xs.size()], ys[idx / xs.size()]};
}

double IlluminanceMap::compliant_fraction(double lo, double hi) const {
  if (lux.empty()) return 0.0;
  const auto n = std::count_if(lux.begin(), lux.end(), [&](double v) { return v >= lo && v <= hi; });
  return static_cast<double>(n) / static_cast<double>(lux.size());
}

namespace {

std::vector<double> axis(double extent, double step) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor(extent / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(std::min(extent, i * step));
  return out;
}

}  // namespace

IlluminanceMap illuminance_map(const ScenarioConfig& config, double plane_height,
                               DimmingLevel dimming, double grid_step, unsigned threads) {
  if (!(plane_height > 0.0 && plane_height < config.room.height)) {
    throw DomainError("plane height must lie strictly between floor and ceiling");
  }
  if (!(grid_step > 0.0)) throw DomainError("grid step must be positive");
  IlluminanceMap map;
  map.plane_height = plane_height;
  map.step = grid_step;
  map.xs = axis(config.room.width, grid_step);
  map.ys = axis(config.room.depth, grid_step);
  map.lux.assign(map.xs.size() * map.ys.size(), 0.0);
  parallel_for(map.lux.size(), threads, [&](std::size_t k) {
    const Vec3 p{map.xs[k % map.xs.size()], map.ys[k / map.xs.size()], plane_height};
    map.lux[k] = illuminance_at(config, p, dimming);
  });
  return map;
}

DimmingInterval dimming_interval(const ScenarioConfig& config, const Vec3& point, double lux_min,
                                 double lux_max) {
  if (!(lux_min < lux_max)) throw DomainError("lux_min must be below lux_max");
  DimmingInterval out;
  out.full_on_lux = illuminance_at(config, point, DimmingLevel::from_duty_cycle(1.0));
  if (!(out.full_on_lux > lux_min)) return out;
  const auto round_tenth = [](double v) { return std::round(v * 10.0) / 10.0; };
  out.empty = false;
  out.low_percent = round_tenth(100.0 * std::sqrt(std::max(lux_min, 0.0) / out.full_on_lux));
  out.high_percent = round_tenth(std::min(100.0, 100.0 * std::sqrt(lux_max / out.full_on_lux)));
  return out;
}

}  // namespace vlc
