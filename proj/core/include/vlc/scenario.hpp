#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vlc/geometry.hpp"

namespace vlc {

enum class Wall { kWest, kEast, kSouth, kNorth };  // x = 0, x = W, y = 0, y = D
inline constexpr std::array<Wall, 4> kAllWalls{Wall::kWest, Wall::kEast, Wall::kSouth,
                                               Wall::kNorth};
const char* wall_name(Wall wall);

struct Room {
  double width = 5.0;   // x extent, m
  double depth = 5.0;   // y extent, m
  double height = 3.0;  // z extent, m
  std::array<double, 4> wall_reflectance{0.8, 0.8, 0.8, 0.8};  // indexed by Wall
  double mesh_resolution = 0.1;  // side of a square wall element, m

  double reflectance(Wall wall) const { return wall_reflectance[static_cast<int>(wall)]; }
};

/// Square, ceiling-mounted LED array facing straight down.
struct Fixture {
  Vec3 center;
  double side = 0.5;            // m
  int grid_count = 18;          // LEDs per row; the array holds grid_count^2 LEDs
  double led_spacing = 0.028;   // m
  double led_power = 0.063;     // optical W per LED
  double semi_angle_deg = 70.0; // half-power semi-angle
  double center_intensity_cd = 9.5;

  int led_count() const { return grid_count * grid_count; }
};

/// Photodiode facing straight up.
struct Receiver {
  Vec3 position{1.0, 1.0, 0.85};
  double area = 1e-4;            // m^2
  double fov_deg = 60.0;         // half-angle field of view
  double responsivity = 0.28;    // A/W
  double filter_gain = 1.0;      // T_s inside the FOV
  double concentrator_gain = 1.0;// g inside the FOV
  double ambient_current = 27e-3;// background photocurrent, A
};

enum class IsiModel {
  // Received NLOS power arriving later than one symbol period after the
  // first arrival.
  kDelayed,
  // Entire first-reflection DC power.
  kDcPower,
};

struct NoiseParams {
  double temperature_k = 300.0;
  // Effective conductance of the flat thermal-noise model
  // sigma^2 = 4 k T G B. Calibrated for the built-in office scenario.
  double thermal_conductance_s = 1.0e-3;
  std::optional<double> thermal_psd_override;  // A^2/Hz, replaces 4kTG
  IsiModel isi_model = IsiModel::kDelayed;
};

struct ScenarioConfig {
  Room room;
  std::vector<Fixture> fixtures;
  Receiver receiver;
  double modulation_bandwidth = 20e6;  // Hz
  NoiseParams noise;

  int total_led_count() const;
  double total_optical_power() const;  // W, all LEDs at full on
};

struct Violation {
  std::string field;
  std::string message;
};
using ValidationReport = std::vector<Violation>;

/// Thermal conductance committed for the built-in scenario. Obtained from
/// calibrate_thermal_conductance() at 50 % perceived brightness.
inline constexpr double kOfficeThermalConductance = 492.3733652399237;

/// The 5 x 5 x 3 m office: four fixtures of 18 x 18 LEDs on a 2.5 m pitch,
/// one of them directly above the photodiode at (1, 1, 0.85).
ScenarioConfig office_scenario();

ValidationReport validate(const ScenarioConfig& config);

/// LED centres of a fixture, row-major in (x, y), lying in the plane of
/// fixture.center.
std::vector<Vec3> led_positions(const Fixture& fixture);

struct SurfaceElement {
  Vec3 position;
  Vec3 normal;  // unit, pointing into the room
  double area = 0.0;
  double reflectance = 0.0;
  Wall wall = Wall::kWest;
};

/// Tessellates the four walls into near-square elements of side
/// room.mesh_resolution. Each wall is split into round(len / res) columns
/// and rows so the element areas sum exactly to the wall area.
std::vector<SurfaceElement> wall_mesh(const Room& room);

/// Copy of `config` with every length multiplied by `factor`.
ScenarioConfig scaled(const ScenarioConfig& config, double factor);

}  // namespace vlc
