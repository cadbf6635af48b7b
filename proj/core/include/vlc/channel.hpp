#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "vlc/geometry.hpp"
#include "vlc/scenario.hpp"

namespace vlc {

/// Lambertian order -1 / log2(cos(semi_angle)). Throws DomainError unless
/// 0 < semi_angle_deg < 90.
double lambertian_mode(double semi_angle_deg);

/// A downward-facing LED.
struct LedPose {
  Vec3 position;
  double mode = 1.0;
};

/// Line-of-sight DC gain from one LED to the receiver; zero outside the FOV
/// or when the LED is not above the detector.
double los_gain(const LedPose& led, const Receiver& receiver);

struct Tap {
  double delay = 0.0;  // s
  double gain = 0.0;   // fraction of the total transmitted power
};

/// Discrete channel impulse response h(t) = sum gain_i * delta(t - delay_i).
/// Gains are normalised to the total optical power of all LEDs, so
/// dc_gain() * total_optical_power() is the received power.
struct ImpulseResponse {
  std::vector<Tap> los;   // one tap per LED inside the FOV
  std::vector<Tap> nlos;  // one tap per (LED, wall element) pair

  double los_gain() const;
  double nlos_gain() const;
  double dc_gain() const { return los_gain() + nlos_gain(); }
  double first_arrival() const;

  /// Gains binned on a uniform grid starting at t = 0. Presentation only.
  std::vector<double> binned(double bin_width) const;
};

struct DelaySpreadResult {
  double mean_delay = 0.0;  // s
  double rms_spread = 0.0;  // s
  /// 1 / (10 D); infinity when the spread is zero.
  double max_isi_free_rate = std::numeric_limits<double>::infinity();
};

/// Moments of h^2 over discrete taps. Throws DomainError if all gains are 0.
DelaySpreadResult delay_spread(const ImpulseResponse& h);

/// First-reflection taps for the scenario receiver (one per LED/element pair
/// with a nonzero contribution).
std::vector<Tap> nlos_response(const ScenarioConfig& config, unsigned threads = 0);

/// Explicit LOS + NLOS taps. Memory grows with LEDs x wall elements; use
/// ChannelModel for sweeps.
ImpulseResponse impulse_response(const ScenarioConfig& config, unsigned threads = 0);

/// Received power binned by excess delay over the first arrival.
struct DelayProfile {
  double bin_width = 0.1e-9;
  std::vector<double> gain;  // bin k covers [k, k+1) * bin_width

  /// Total gain arriving strictly later than `excess_delay` (bin resolution).
  double gain_beyond(double excess_delay) const;
};

struct ChannelSummary {
  Vec3 receiver_position;
  double los_gain = 0.0;
  double nlos_gain = 0.0;
  double first_arrival = 0.0;  // s
  DelaySpreadResult spread;
  DelayProfile nlos_profile;

  double dc_gain() const { return los_gain + nlos_gain; }
};

/// Precomputed transmitter-to-wall coupling for a scenario. The NLOS gain of
/// pair (LED i, element j) factors as s_ij * r_j, where s_ij depends only on
/// the LED and the element and r_j only on the element and the receiver.
/// Per-element sums of s_ij, s_ij^2 tau_ij^k (k = 0, 1, 2) and a histogram
/// of s_ij over tau_ij make every receiver query O(elements) while keeping
/// the h^2 moments of the individual delta taps exact.
class ChannelModel {
 public:
  explicit ChannelModel(const ScenarioConfig& config, unsigned threads = 0,
                        double profile_bin = 0.1e-9);

  ChannelSummary analyze(const Vec3& receiver_position) const;
  ChannelSummary analyze() const { return analyze(config_.receiver.position); }

  const ScenarioConfig& config() const { return config_; }
  std::size_t element_count() const { return elements_.size(); }

 private:
  struct ElementSums {
    double s = 0.0;      // sum_i s_ij
    double s2 = 0.0;     // sum_i s_ij^2
    double s2t = 0.0;    // sum_i s_ij^2 tau_ij
    double s2tt = 0.0;   // sum_i s_ij^2 tau_ij^2
    double tau_min = 0.0, tau_max = 0.0;
    std::vector<double> hist;  // s_ij binned by tau_ij - tau_min
  };

  ScenarioConfig config_;
  std::vector<LedPose> leds_;
  std::vector<double> led_weight_;  // LED power / total power
  std::vector<SurfaceElement> elements_;
  std::vector<ElementSums> sums_;
  double profile_bin_;
};

/// Convenience: ChannelModel(config).analyze().
ChannelSummary analyze_channel(const ScenarioConfig& config, unsigned threads = 0);

struct DelaySpreadMap {
  double plane_height = 0.0;
  double step = 0.0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> spread;  // row-major, seconds

  double at(std::size_t ix, std::size_t iy) const { return spread[iy * xs.size() + ix]; }
};

DelaySpreadMap delay_spread_map(const ScenarioConfig& config, double plane_height,
                                double grid_step, unsigned threads = 0);

}  // namespace vlc
