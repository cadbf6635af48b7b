#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vlc/channel.hpp"
#include "vlc/modem.hpp"
#include "vlc/photometry.hpp"
#include "vlc/scenario.hpp"

namespace vlc {

/// Receiver noise at one operating point. Variances are in A^2 over the
/// noise bandwidth; n0 = total_variance / bandwidth is the equivalent
/// one-sided PSD, so snr = signal^2 / (n0 * bandwidth).
struct NoiseBudget {
  double bandwidth = 0.0;       // Hz, B of the active OPPM scheme
  double bit_rate = 0.0;        // bit/s
  double symbol_period = 0.0;   // s
  double transmitted_power = 0.0;     // W, average over all LEDs at this dimming
  double received_los_power = 0.0;    // W
  double received_total_power = 0.0;  // W, LOS + first reflection
  double received_isi_power = 0.0;    // W
  double signal_current = 0.0;        // A, R * P_r^LOS
  double sigma2_shot = 0.0;     // A^2
  double sigma2_thermal = 0.0;  // A^2
  double isi_term = 0.0;        // (R P_r^ISI)^2, A^2
  double total_variance = 0.0;  // A^2, sum of the three terms
  double n0 = 0.0;              // A^2 / Hz
};

/// `bit_rate` defaults to max_bit_rate(scheme, config.modulation_bandwidth),
/// which makes the scheme bandwidth equal the modulation bandwidth.
NoiseBudget noise_budget(const ScenarioConfig& config, DimmingLevel dimming,
                         const OppmScheme& scheme, const ChannelSummary& channel,
                         std::optional<double> bit_rate = std::nullopt);

/// Electrical SNR in dB from the LOS signal only; -infinity when the LOS
/// gain is zero.
double snr_db(const NoiseBudget& budget);
double snr_db(const ScenarioConfig& config, DimmingLevel dimming, const OppmScheme& scheme,
              const ChannelSummary& channel, std::optional<double> bit_rate = std::nullopt);

/// Thermal conductance G for which snr_db() equals target_db at the given
/// operating point. Throws DomainError when shot and ISI noise alone already
/// push the SNR below the target.
double calibrate_thermal_conductance(const ScenarioConfig& config, DimmingLevel dimming,
                                     const OppmScheme& scheme, const ChannelSummary& channel,
                                     double target_db);

struct SnrPoint {
  double perceived_percent = 0.0;
  int chips = 0;
  int weight = 0;
  double snr_db = 0.0;
  NoiseBudget budget;
};

/// SNR against perceived brightness at fixed code length n; the weight at
/// each level comes from weight_for_dimming(n, level) and the duty cycle
/// from that level directly.
std::vector<SnrPoint> snr_curve(const ScenarioConfig& config, const ChannelSummary& channel,
                                int chips, std::span<const double> perceived_percent);

}  // namespace vlc
