#include "vlc/noise.hpp"

#include <cmath>
#include <limits>

#include "vlc/errors.hpp"
#include "vlc/geometry.hpp"

namespace vlc {

namespace {

double thermal_psd(const NoiseParams& p) {
  if (p.thermal_psd_override) return *p.thermal_psd_override;
  return 4.0 * kBoltzmann * p.temperature_k * p.thermal_conductance_s;
}

}  // namespace

NoiseBudget noise_budget(const ScenarioConfig& config, DimmingLevel dimming,
                         const OppmScheme& scheme, const ChannelSummary& channel,
                         std::optional<double> bit_rate) {
  NoiseBudget b;
  b.bit_rate = bit_rate.value_or(max_bit_rate(scheme, config.modulation_bandwidth));
  if (!(b.bit_rate > 0.0)) throw DomainError("bit rate must be positive");
  b.bandwidth = bandwidth(scheme, b.bit_rate);
  b.symbol_period = scheme.log2_alphabet() / b.bit_rate;

  const double responsivity = config.receiver.responsivity;
  b.transmitted_power = dimming.duty_cycle() * config.total_optical_power();
  b.received_los_power = channel.los_gain * b.transmitted_power;
  b.received_total_power = channel.dc_gain() * b.transmitted_power;
  switch (config.noise.isi_model) {
    case IsiModel::kDelayed:
      b.received_isi_power = channel.nlos_profile.gain_beyond(b.symbol_period) * b.transmitted_power;
      break;
    case IsiModel::kDcPower:
      b.received_isi_power = channel.nlos_gain * b.transmitted_power;
      break;
  }
  b.signal_current = responsivity * b.received_los_power;

  b.sigma2_shot = 2.0 * kElectronCharge *
                  (responsivity * b.received_total_power + config.receiver.ambient_current) *
                  b.bandwidth;
  b.sigma2_thermal = thermal_psd(config.noise) * b.bandwidth;
  const double isi_current = responsivity * b.received_isi_power;
  b.isi_term = isi_current * isi_current;
  b.total_variance = b.sigma2_shot + b.sigma2_thermal + b.isi_term;
  b.n0 = b.total_variance / b.bandwidth;
  return b;
}

double snr_db(const NoiseBudget& budget) {
  if (!(budget.signal_current > 0.0)) return -std::numeric_limits<double>::infinity();
  if (!(budget.total_variance > 0.0)) return std::numeric_limits<double>::infinity();
  const double snr =
      budget.signal_current * budget.signal_current / (budget.n0 * budget.bandwidth);
  return 10.0 * std::log10(snr);
}

double snr_db(const ScenarioConfig& config, DimmingLevel dimming, const OppmScheme& scheme,
              const ChannelSummary& channel, std::optional<double> bit_rate) {
  return snr_db(noise_budget(config, dimming, scheme, channel, bit_rate));
}

double calibrate_thermal_conductance(const ScenarioConfig& config, DimmingLevel dimming,
                                     const OppmScheme& scheme, const ChannelSummary& channel,
                                     double target_db) {
  ScenarioConfig probe = config;
  probe.noise.thermal_psd_override.reset();
  probe.noise.thermal_conductance_s = 0.0;
  const NoiseBudget b = noise_budget(probe, dimming, scheme, channel);
  if (!(b.signal_current > 0.0)) throw DomainError("no line-of-sight signal to calibrate against");
  if (!(config.noise.temperature_k > 0.0)) throw DomainError("temperature must be positive");
  const double wanted_total =
      b.signal_current * b.signal_current / std::pow(10.0, target_db / 10.0);
  const double thermal = wanted_total - b.sigma2_shot - b.isi_term;
  if (!(thermal > 0.0)) {
    throw DomainError("shot and ISI noise already exceed the target SNR");
  }
  return thermal / (4.0 * kBoltzmann * config.noise.temperature_k * b.bandwidth);
}

std::vector<SnrPoint> snr_curve(const ScenarioConfig& config, const ChannelSummary& channel,
                                int chips, std::span<const double> perceived_percent) {
  std::vector<SnrPoint> out;
  out.reserve(perceived_percent.size());
  for (double level : perceived_percent) {
    SnrPoint p;
    p.perceived_percent = level;
    p.chips = chips;
    p.weight = weight_for_dimming(chips, level);
    const OppmScheme scheme = OppmScheme::make(chips, p.weight);
    p.budget = noise_budget(config, DimmingLevel::from_perceived(level), scheme, channel);
    p.snr_db = snr_db(p.budget);
    out.push_back(p);
  }
  return out;
}

}  // namespace vlc
