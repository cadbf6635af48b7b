#include "vlc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vlc {

const char* wall_name(Wall wall) {
  switch (wall) {
    case Wall::kWest: return "west";
    case Wall::kEast: return "east";
    case Wall::kSouth: return "south";
    case Wall::kNorth: return "north";
  }
  return "?";
}

int ScenarioConfig::total_led_count() const {
  int count = 0;
  for (const auto& f : fixtures) count += f.led_count();
  return count;
}

double ScenarioConfig::total_optical_power() const {
  double total = 0.0;
  for (const auto& f : fixtures) total += f.led_power * f.led_count();
  return total;
}

ScenarioConfig office_scenario() {
  ScenarioConfig config;
  config.room = Room{};
  for (const auto& [x, y] : {std::pair{1.0, 1.0}, {1.0, 3.5}, {3.5, 1.0}, {3.5, 3.5}}) {
    Fixture f;
    f.center = {x, y, config.room.height};
    config.fixtures.push_back(f);
  }
  config.receiver = Receiver{};
  config.modulation_bandwidth = 20e6;
  config.noise.thermal_conductance_s = kOfficeThermalConductance;
  return config;
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& out) : out_(out) {}

  void require(bool ok, std::string field, std::string message) {
    if (!ok) out_.push_back({std::move(field), std::move(message)});
  }

 private:
  ValidationReport& out_;
};

bool inside(const Room& room, const Vec3& p) {
  return p.x >= 0.0 && p.x <= room.width && p.y >= 0.0 && p.y <= room.depth && p.z >= 0.0 &&
         p.z <= room.height;
}

std::string indexed(const char* base, std::size_t i, const char* leaf) {
  std::ostringstream os;
  os << base << '[' << i << "]." << leaf;
  return os.str();
}

}  // namespace

ValidationReport validate(const ScenarioConfig& config) {
  ValidationReport report;
  Checker check(report);
  const Room& room = config.room;

  check.require(room.width > 0.0 && room.depth > 0.0 && room.height > 0.0, "room",
                "room dimensions must be positive");
  for (Wall w : kAllWalls) {
    const double rho = room.reflectance(w);
    check.require(rho >= 0.0 && rho <= 1.0,
                  std::string("room.wall_reflectance.") + wall_name(w),
                  "reflectance out of range [0, 1]");
  }
  const double min_dim = std::min({room.width, room.depth, room.height});
  check.require(room.mesh_resolution > 0.0 && room.mesh_resolution <= min_dim,
                "room.mesh_resolution", "mesh resolution must be in (0, min room dimension]");

  check.require(!config.fixtures.empty(), "fixtures", "at least one fixture is required");
  for (std::size_t i = 0; i < config.fixtures.size(); ++i) {
    const Fixture& f = config.fixtures[i];
    check.require(f.grid_count >= 1, indexed("fixtures", i, "grid_count"),
                  "grid count must be at least 1");
    check.require(f.led_spacing >= 0.0 && (f.grid_count - 1) * f.led_spacing <= f.side + 1e-12,
                  indexed("fixtures", i, "led_spacing"), "LED grid does not fit the fixture side");
    check.require(f.semi_angle_deg > 0.0 && f.semi_angle_deg < 90.0,
                  indexed("fixtures", i, "semi_angle_deg"), "semi-angle must be in (0, 90) degrees");
    check.require(f.led_power >= 0.0, indexed("fixtures", i, "led_power"),
                  "LED power must be nonnegative");
    check.require(f.center_intensity_cd >= 0.0, indexed("fixtures", i, "center_intensity_cd"),
                  "luminous intensity must be nonnegative");
    const double half = 0.5 * f.side;
    const bool footprint_inside = inside(room, f.center) && f.center.x - half >= 0.0 &&
                                  f.center.x + half <= room.width && f.center.y - half >= 0.0 &&
                                  f.center.y + half <= room.depth;
    check.require(footprint_inside, indexed("fixtures", i, "center"), "fixture outside room");
  }

  const Receiver& rx = config.receiver;
  check.require(inside(room, rx.position), "receiver.position", "receiver outside room");
  check.require(rx.area > 0.0, "receiver.area", "detector area must be positive");
  check.require(rx.fov_deg > 0.0 && rx.fov_deg <= 90.0, "receiver.fov_deg",
                "field of view must be in (0, 90] degrees");
  check.require(rx.responsivity > 0.0, "receiver.responsivity", "responsivity must be positive");
  check.require(rx.filter_gain > 0.0, "receiver.filter_gain", "filter gain must be positive");
  check.require(rx.concentrator_gain > 0.0, "receiver.concentrator_gain",
                "concentrator gain must be positive");
  check.require(rx.ambient_current >= 0.0, "receiver.ambient_current",
                "ambient current must be nonnegative");

  check.require(config.modulation_bandwidth > 0.0, "modulation_bandwidth",
                "modulation bandwidth must be positive");
  const NoiseParams& n = config.noise;
  check.require(n.temperature_k >= 0.0, "noise.temperature_k", "temperature must be nonnegative");
  check.require(n.thermal_conductance_s >= 0.0, "noise.thermal_conductance_s",
                "conductance must be nonnegative");
  check.require(!n.thermal_psd_override || *n.thermal_psd_override >= 0.0,
                "noise.thermal_psd_override", "thermal PSD must be nonnegative");
  return report;
}

std::vector<Vec3> led_positions(const Fixture& fixture) {
  std::vector<Vec3> out;
  const int count = std::max(fixture.grid_count, 0);
  out.reserve(static_cast<std::size_t>(count) * count);
  const double offset = 0.5 * (count - 1);
  for (int ix = 0; ix < count; ++ix) {
    for (int iy = 0; iy < count; ++iy) {
      out.push_back({fixture.center.x + (ix - offset) * fixture.led_spacing,
                     fixture.center.y + (iy - offset) * fixture.led_spacing, fixture.center.z});
    }
  }
  return out;
}

std::vector<SurfaceElement> wall_mesh(const Room& room) {
  std::vector<SurfaceElement> out;
  const double res = room.mesh_resolution;
  const auto cells = [res](double len) {
    return std::max(1, static_cast<int>(std::lround(len / res)));
  };
  const int nz = cells(room.height);
  const double dz = room.height / nz;

  for (Wall wall : kAllWalls) {
    const bool along_y = wall == Wall::kWest || wall == Wall::kEast;
    const double len = along_y ? room.depth : room.width;
    const int nu = cells(len);
    const double du = len / nu;
    Vec3 normal;
    switch (wall) {
      case Wall::kWest: normal = {1, 0, 0}; break;
      case Wall::kEast: normal = {-1, 0, 0}; break;
      case Wall::kSouth: normal = {0, 1, 0}; break;
      case Wall::kNorth: normal = {0, -1, 0}; break;
    }
    const double fixed = (wall == Wall::kEast) ? room.width : (wall == Wall::kNorth) ? room.depth : 0.0;
    for (int iu = 0; iu < nu; ++iu) {
      const double u = (iu + 0.5) * du;
      for (int iz = 0; iz < nz; ++iz) {
        const double z = (iz + 0.5) * dz;
        SurfaceElement e;
        e.position = along_y ? Vec3{fixed, u, z} : Vec3{u, fixed, z};
        e.normal = normal;
        e.area = du * dz;
        e.reflectance = room.reflectance(wall);
        e.wall = wall;
        out.push_back(e);
      }
    }
  }
  return out;
}

ScenarioConfig scaled(const ScenarioConfig& config, double factor) {
  ScenarioConfig out = config;
  out.room.width *= factor;
  out.room.depth *= factor;
  out.room.height *= factor;
  out.room.mesh_resolution *= factor;
  for (auto& f : out.fixtures) {
    f.center = f.center * factor;
    f.side *= factor;
    f.led_spacing *= factor;
  }
  out.receiver.position = out.receiver.position * factor;
  return out;
}

}  // namespace vlc
