#include "vlc/scenario_io.hpp"

#include <fstream>

#include "vlc/errors.hpp"

namespace vlc {

namespace {

using nlohmann::json;

json point(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

Vec3 point_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected [x, y, z] point");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void read(const json& section, const char* key, T& field) {
  if (auto it = section.find(key); it != section.end()) field = it->get<T>();
}

const char* isi_model_name(IsiModel m) {
  return m == IsiModel::kDelayed ? "delayed" : "dc_power";
}

IsiModel isi_model_from(const std::string& s) {
  if (s == "delayed") return IsiModel::kDelayed;
  if (s == "dc_power") return IsiModel::kDcPower;
  throw ConfigError("unknown noise.isi_model '" + s + "'");
}

}  // namespace

json to_json(const ScenarioConfig& config) {
  json doc;
  const Room& r = config.room;
  json reflect;
  for (Wall w : kAllWalls) reflect[wall_name(w)] = r.reflectance(w);
  doc["room"] = {{"width", r.width},
                 {"depth", r.depth},
                 {"height", r.height},
                 {"wall_reflectance", reflect},
                 {"mesh_resolution", r.mesh_resolution}};
  doc["fixtures"] = json::array();
  for (const Fixture& f : config.fixtures) {
    doc["fixtures"].push_back({{"center", point(f.center)},
                               {"side", f.side},
                               {"grid_count", f.grid_count},
                               {"led_spacing", f.led_spacing},
                               {"led_power", f.led_power},
                               {"semi_angle_deg", f.semi_angle_deg},
                               {"center_intensity_cd", f.center_intensity_cd}});
  }
  const Receiver& rx = config.receiver;
  doc["receiver"] = {{"position", point(rx.position)},
                     {"area", rx.area},
                     {"fov_deg", rx.fov_deg},
                     {"responsivity", rx.responsivity},
                     {"filter_gain", rx.filter_gain},
                     {"concentrator_gain", rx.concentrator_gain},
                     {"ambient_current", rx.ambient_current}};
  doc["modulation_bandwidth"] = config.modulation_bandwidth;
  const NoiseParams& n = config.noise;
  doc["noise"] = {{"temperature_k", n.temperature_k},
                  {"thermal_conductance_s", n.thermal_conductance_s},
                  {"isi_model", isi_model_name(n.isi_model)}};
  doc["noise"]["thermal_psd_override"] =
      n.thermal_psd_override ? json(*n.thermal_psd_override) : json(nullptr);
  return doc;
}

ScenarioConfig scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
  ScenarioConfig config;
  try {
    if (auto it = doc.find("room"); it != doc.end()) {
      const json& r = *it;
      read(r, "width", config.room.width);
      read(r, "depth", config.room.depth);
      read(r, "height", config.room.height);
      read(r, "mesh_resolution", config.room.mesh_resolution);
      if (auto rho = r.find("wall_reflectance"); rho != r.end()) {
        if (rho->is_number()) {
          config.room.wall_reflectance.fill(rho->get<double>());
        } else {
          for (Wall w : kAllWalls) read(*rho, wall_name(w), config.room.wall_reflectance[static_cast<int>(w)]);
        }
      }
    }
    if (auto it = doc.find("fixtures"); it != doc.end()) {
      for (const json& fj : *it) {
        Fixture f;
        f.center = {1.0, 1.0, config.room.height};
        if (auto c = fj.find("center"); c != fj.end()) f.center = point_from(*c);
        read(fj, "side", f.side);
        read(fj, "grid_count", f.grid_count);
        read(fj, "led_spacing", f.led_spacing);
        read(fj, "led_power", f.led_power);
        read(fj, "semi_angle_deg", f.semi_angle_deg);
        read(fj, "center_intensity_cd", f.center_intensity_cd);
        config.fixtures.push_back(f);
      }
    }
    if (auto it = doc.find("receiver"); it != doc.end()) {
      const json& r = *it;
      if (auto p = r.find("position"); p != r.end()) config.receiver.position = point_from(*p);
      read(r, "area", config.receiver.area);
      read(r, "fov_deg", config.receiver.fov_deg);
      read(r, "responsivity", config.receiver.responsivity);
      read(r, "filter_gain", config.receiver.filter_gain);
      read(r, "concentrator_gain", config.receiver.concentrator_gain);
      read(r, "ambient_current", config.receiver.ambient_current);
    }
    read(doc, "modulation_bandwidth", config.modulation_bandwidth);
    if (auto it = doc.find("noise"); it != doc.end()) {
      const json& n = *it;
      read(n, "temperature_k", config.noise.temperature_k);
      read(n, "thermal_conductance_s", config.noise.thermal_conductance_s);
      if (auto o = n.find("thermal_psd_override"); o != n.end() && !o->is_null()) {
        config.noise.thermal_psd_override = o->get<double>();
      }
      if (auto m = n.find("isi_model"); m != n.end()) {
        config.noise.isi_model = isi_model_from(m->get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse '" + path.string() + "': " + e.what());
  }
  return scenario_from_json(doc);
}

void save_scenario(const ScenarioConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write scenario file '" + path.string() + "'");
  out << to_json(config).dump(2) << '\n';
}

}  // namespace vlc
