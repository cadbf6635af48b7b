#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlc/channel.hpp"
#include "vlc/mc.hpp"
#include "vlc/noise.hpp"
#include "vlc/photometry.hpp"
#include "vlc/scenario.hpp"
#include "vlc/tcm.hpp"

namespace vlc {

/// FNV-1a over a byte string.
std::uint64_t fnv1a64(std::string_view bytes);
/// Hash of the canonical JSON form of a scenario, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);
std::string config_hash(const McConfig& mc);

// CSV writers. Every row ends with '\n'; numbers use %.10g.
std::string illuminance_csv(const IlluminanceMap& map);
std::string delay_spread_csv(const DelaySpreadMap& map);
std::string impulse_response_csv(const ImpulseResponse& h);
std::string ber_csv(std::span<const BerCurve> curves);
std::string snr_csv(std::span<const SnrPoint> points);
std::string power_curve_csv(std::span<const PowerCurvePoint> points,
                            std::span<const int> min_distances);

struct RatePoint {
  int chips = 0;
  int weight = 0;
  double perceived_percent = 0.0;
  double bit_rate = 0.0;             // Rb_max, bit/s
  double spectral_efficiency = 0.0;  // bit/s/Hz
};
/// Rb_max for w = 1 .. n - 1 at fixed n, optionally limited to a
/// perceived-brightness band.
std::vector<RatePoint> rate_curve(int chips, double bandwidth_hz, double lo_percent = 0.0,
                                  double hi_percent = 100.0);
std::string rate_csv(std::span<const RatePoint> points);

nlohmann::json to_json(const IlluminanceMap& map, double lux_lo, double lux_hi);
nlohmann::json to_json(const DimmingInterval& interval);
nlohmann::json to_json(const ChannelSummary& channel);
nlohmann::json to_json(const NoiseBudget& budget);
nlohmann::json to_json(const BerEstimate& e);
nlohmann::json to_json(const CodeLengthDecision& d);
nlohmann::json to_json(const TcmScheme& t);

struct DesignOptions {
  double lux_min = 200.0;
  double lux_max = 800.0;
  std::vector<double> perceived_levels{35.0, 50.0, 75.0, 86.0};
  std::vector<int> candidates{8, 16, 32, 64, 128};
  int reference_chips = 32;  // scheme used to evaluate the channel SNR
  double threshold = 3e-3;
  std::vector<int> trellis_states{4, 8, 16};
  McConfig mc;
  unsigned threads = 0;
};

struct DesignLevel {
  double perceived_percent = 0.0;
  double channel_snr_db = 0.0;
  CodeLengthDecision decision;
  /// Scheme that TCM is applied to: the chosen one, else the largest
  /// candidate.
  int tcm_base_chips = 0;
  int tcm_base_weight = 0;
  std::vector<TcmScheme> tcm;      // one per trellis state count
  std::vector<double> tcm_gain_db;  // exact-form gain
  std::optional<int> recommended_states;
};

struct DesignReport {
  std::string scenario_hash;
  DimmingInterval interval;
  ChannelSummary channel;
  std::vector<DesignLevel> levels;
};

DesignReport design_report(const ScenarioConfig& config, const DesignOptions& options);
nlohmann::json to_json(const DesignReport& report);

}  // namespace vlc
