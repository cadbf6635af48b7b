#include "vlc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vlc/errors.hpp"
#include "vlc/parallel.hpp"

namespace vlc {

double lambertian_mode(double semi_angle_deg) {
  if (!(semi_angle_deg > 0.0 && semi_angle_deg < 90.0)) {
    throw DomainError("semi-angle at half power must lie in (0, 90) degrees");
  }
  return -1.0 / std::log2(std::cos(deg_to_rad(semi_angle_deg)));
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Receiver-side factor shared by LOS and NLOS paths: an upward-facing
// detector seeing radiation arriving along unit direction cos_incidence
// from above. Returns 0 outside the FOV.
double receiver_factor(const Receiver& rx, double cos_incidence) {
  if (cos_incidence <= 0.0) return 0.0;
  if (cos_incidence < std::cos(deg_to_rad(rx.fov_deg))) return 0.0;
  return rx.area * rx.filter_gain * rx.concentrator_gain * cos_incidence;
}

std::vector<LedPose> collect_leds(const ScenarioConfig& config, std::vector<double>& weight) {
  std::vector<LedPose> leds;
  weight.clear();
  const double total = config.total_optical_power();
  for (const Fixture& f : config.fixtures) {
    const double mode = lambertian_mode(f.semi_angle_deg);
    const double share = total > 0.0 ? f.led_power / total : 0.0;
    for (const Vec3& p : led_positions(f)) {
      leds.push_back({p, mode});
      weight.push_back(share);
    }
  }
  return leds;
}

// Transmitter-to-element coupling s_ij without the LED power weight.
// Returns false when the element receives nothing from the LED.
bool led_to_element(const LedPose& led, const SurfaceElement& e, double& coupling,
                    double& distance) {
  const Vec3 v = e.position - led.position;
  const double d2 = v.dot(v);
  const double d = std::sqrt(d2);
  const double cos_irradiance = -v.z / d;  // LED faces -z
  const double cos_element = -v.dot(e.normal) / d;
  if (cos_irradiance <= 0.0 || cos_element <= 0.0 || e.reflectance <= 0.0) return false;
  coupling = (led.mode + 1.0) * e.reflectance * e.area / (kTwoPi * d2) *
             std::pow(cos_irradiance, led.mode) * cos_element;
  distance = d;
  return true;
}

// Element-to-receiver factor r_j (includes 1 / d^2). Returns false outside
// the FOV or when the detector is behind the element.
bool element_to_receiver(const SurfaceElement& e, const Receiver& rx, const Vec3& rx_pos,
                         double& factor, double& distance) {
  const Vec3 w = rx_pos - e.position;
  const double d2 = w.dot(w);
  const double d = std::sqrt(d2);
  const double cos_emission = w.dot(e.normal) / d;
  const double cos_incidence = -w.z / d;  // detector faces +z
  if (cos_emission <= 0.0) return false;
  const double rf = receiver_factor(rx, cos_incidence);
  if (rf <= 0.0) return false;
  factor = rf * cos_emission / d2;
  distance = d;
  return true;
}

std::vector<double> grid_axis(double extent, double step) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor(extent / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) out.push_back(std::min(extent, i * step));
  return out;
}

}  // namespace

double los_gain(const LedPose& led, const Receiver& receiver) {
  const Vec3 d = led.position - receiver.position;
  const double dist2 = d.dot(d);
  if (dist2 <= 0.0) return 0.0;
  const double cos_angle = d.z / std::sqrt(dist2);
  const double rf = receiver_factor(receiver, cos_angle);
  if (rf <= 0.0) return 0.0;
  return (led.mode + 1.0) / (kTwoPi * dist2) * std::pow(cos_angle, led.mode) * rf;
}

double ImpulseResponse::los_gain() const {
  CompensatedSum s;
  for (const Tap& t : los) s += t.gain;
  return s.value();
}

double ImpulseResponse::nlos_gain() const {
  CompensatedSum s;
  for (const Tap& t : nlos) s += t.gain;
  return s.value();
}

double ImpulseResponse::first_arrival() const {
  double first = std::numeric_limits<double>::infinity();
  for (const auto* taps : {&los, &nlos}) {
    for (const Tap& t : *taps) {
      if (t.gain > 0.0) first = std::min(first, t.delay);
    }
  }
  return first;
}

std::vector<double> ImpulseResponse::binned(double bin_width) const {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  double last = 0.0;
  for (const auto* taps : {&los, &nlos}) {
    for (const Tap& t : *taps) last = std::max(last, t.delay);
  }
  std::vector<double> bins(static_cast<std::size_t>(last / bin_width) + 1, 0.0);
  for (const auto* taps : {&los, &nlos}) {
    for (const Tap& t : *taps) bins[static_cast<std::size_t>(t.delay / bin_width)] += t.gain;
  }
  return bins;
}

DelaySpreadResult delay_spread(const ImpulseResponse& h) {
  CompensatedSum p0, p1;
  for (const auto* taps : {&h.los, &h.nlos}) {
    for (const Tap& t : *taps) {
      const double g2 = t.gain * t.gain;
      p0 += g2;
      p1 += t.delay * g2;
    }
  }
  if (!(p0.value() > 0.0)) throw DomainError("impulse response has no positive gain");
  DelaySpreadResult out;
  out.mean_delay = p1.value() / p0.value();
  CompensatedSum p2;
  for (const auto* taps : {&h.los, &h.nlos}) {
    for (const Tap& t : *taps) {
      const double dt = t.delay - out.mean_delay;
      p2 += dt * dt * t.gain * t.gain;
    }
  }
  out.rms_spread = std::sqrt(std::max(0.0, p2.value() / p0.value()));
  out.max_isi_free_rate = out.rms_spread > 0.0 ? 1.0 / (10.0 * out.rms_spread)
                                               : std::numeric_limits<double>::infinity();
  return out;
}

std::vector<Tap> nlos_response(const ScenarioConfig& config, unsigned threads) {
  std::vector<double> weight;
  const std::vector<LedPose> leds = collect_leds(config, weight);
  const std::vector<SurfaceElement> elements = wall_mesh(config.room);
  const Receiver& rx = config.receiver;

  std::vector<std::vector<Tap>> per_element(elements.size());
  parallel_for(elements.size(), threads, [&](std::size_t j) {
    double r = 0.0, dr = 0.0;
    if (!element_to_receiver(elements[j], rx, rx.position, r, dr)) return;
    auto& taps = per_element[j];
    taps.reserve(leds.size());
    for (std::size_t i = 0; i < leds.size(); ++i) {
      double s = 0.0, ds = 0.0;
      if (!led_to_element(leds[i], elements[j], s, ds)) continue;
      taps.push_back({(ds + dr) / kSpeedOfLight, weight[i] * s * r});
    }
  });
  std::vector<Tap> out;
  std::size_t total = 0;
  for (const auto& v : per_element) total += v.size();
  out.reserve(total);
  for (const auto& v : per_element) out.insert(out.end(), v.begin(), v.end());
  return out;
}

namespace {

std::vector<Tap> los_taps(const std::vector<LedPose>& leds, const std::vector<double>& weight,
                          const Receiver& rx) {
  std::vector<Tap> out;
  for (std::size_t i = 0; i < leds.size(); ++i) {
    const double g = los_gain(leds[i], rx);
    if (g <= 0.0) continue;
    out.push_back({(leds[i].position - rx.position).norm() / kSpeedOfLight, weight[i] * g});
  }
  return out;
}

}  // namespace

ImpulseResponse impulse_response(const ScenarioConfig& config, unsigned threads) {
  std::vector<double> weight;
  const std::vector<LedPose> leds = collect_leds(config, weight);
  ImpulseResponse h;
  h.los = los_taps(leds, weight, config.receiver);
  h.nlos = nlos_response(config, threads);
  return h;
}

double DelayProfile::gain_beyond(double excess_delay) const {
  CompensatedSum s;
  const double start = excess_delay / bin_width;
  for (std::size_t k = 0; k < gain.size(); ++k) {
    if (static_cast<double>(k) >= start) s += gain[k];
  }
  return s.value();
}

ChannelModel::ChannelModel(const ScenarioConfig& config, unsigned threads, double profile_bin)
    : config_(config), profile_bin_(profile_bin) {
  if (!(profile_bin > 0.0)) throw DomainError("profile bin must be positive");
  leds_ = collect_leds(config_, led_weight_);
  elements_ = wall_mesh(config_.room);
  sums_.resize(elements_.size());
  parallel_for(elements_.size(), threads, [&](std::size_t j) {
    ElementSums& es = sums_[j];
    std::vector<std::pair<double, double>> contrib;  // (tau, s)
    contrib.reserve(leds_.size());
    for (std::size_t i = 0; i < leds_.size(); ++i) {
      double s = 0.0, ds = 0.0;
      if (!led_to_element(leds_[i], elements_[j], s, ds)) continue;
      contrib.emplace_back(ds / kSpeedOfLight, led_weight_[i] * s);
    }
    if (contrib.empty()) return;
    CompensatedSum s0, s2, s2t, s2tt;
    es.tau_min = es.tau_max = contrib.front().first;
    for (const auto& [tau, s] : contrib) {
      s0 += s;
      s2 += s * s;
      s2t += s * s * tau;
      s2tt += s * s * tau * tau;
      es.tau_min = std::min(es.tau_min, tau);
      es.tau_max = std::max(es.tau_max, tau);
    }
    es.s = s0.value();
    es.s2 = s2.value();
    es.s2t = s2t.value();
    es.s2tt = s2tt.value();
    es.hist.assign(static_cast<std::size_t>((es.tau_max - es.tau_min) / profile_bin_) + 1, 0.0);
    for (const auto& [tau, s] : contrib) {
      es.hist[static_cast<std::size_t>((tau - es.tau_min) / profile_bin_)] += s;
    }
  });
}

ChannelSummary ChannelModel::analyze(const Vec3& receiver_position) const {
  Receiver rx = config_.receiver;
  rx.position = receiver_position;

  ChannelSummary out;
  out.receiver_position = receiver_position;
  out.nlos_profile.bin_width = profile_bin_;

  // h^2 moments: m0 = sum g^2, m1 = sum g^2 t, m2 = sum g^2 t^2.
  CompensatedSum los_sum, nlos_sum, m0, m1, m2;
  double first = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < leds_.size(); ++i) {
    const double g = led_weight_[i] * los_gain(leds_[i], rx);
    if (g <= 0.0) continue;
    const double t = (leds_[i].position - rx.position).norm() / kSpeedOfLight;
    los_sum += g;
    m0 += g * g;
    m1 += g * g * t;
    m2 += g * g * t * t;
    first = std::min(first, t);
  }

  struct Visible {
    std::size_t j;
    double r;
    double delta;
  };
  std::vector<Visible> visible;
  visible.reserve(elements_.size());
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const ElementSums& es = sums_[j];
    if (es.s <= 0.0) continue;
    double r = 0.0, dr = 0.0;
    if (!element_to_receiver(elements_[j], rx, rx.position, r, dr)) continue;
    const double delta = dr / kSpeedOfLight;
    nlos_sum += es.s * r;
    const double r2 = r * r;
    m0 += r2 * es.s2;
    m1 += r2 * (es.s2t + delta * es.s2);
    m2 += r2 * (es.s2tt + 2.0 * delta * es.s2t + delta * delta * es.s2);
    first = std::min(first, es.tau_min + delta);
    visible.push_back({j, r, delta});
  }

  out.los_gain = los_sum.value();
  out.nlos_gain = nlos_sum.value();
  if (!(m0.value() > 0.0)) {
    out.first_arrival = std::numeric_limits<double>::infinity();
    return out;
  }
  out.first_arrival = first;

  const double mu = m1.value() / m0.value();
  const double var = std::max(0.0, m2.value() / m0.value() - mu * mu);
  out.spread.mean_delay = mu;
  out.spread.rms_spread = std::sqrt(var);
  out.spread.max_isi_free_rate = out.spread.rms_spread > 0.0
                                     ? 1.0 / (10.0 * out.spread.rms_spread)
                                     : std::numeric_limits<double>::infinity();

  for (const Visible& v : visible) {
    const ElementSums& es = sums_[v.j];
    const double offset = es.tau_min + v.delta - first;
    for (std::size_t k = 0; k < es.hist.size(); ++k) {
      if (es.hist[k] == 0.0) continue;
      const auto bin = static_cast<std::size_t>((offset + k * profile_bin_) / profile_bin_);
      if (bin >= out.nlos_profile.gain.size()) out.nlos_profile.gain.resize(bin + 1, 0.0);
      out.nlos_profile.gain[bin] += v.r * es.hist[k];
    }
  }
  return out;
}

ChannelSummary analyze_channel(const ScenarioConfig& config, unsigned threads) {
  return ChannelModel(config, threads).analyze();
}

DelaySpreadMap delay_spread_map(const ScenarioConfig& config, double plane_height,
                                double grid_step, unsigned threads) {
  if (!(plane_height > 0.0 && plane_height < config.room.height)) {
    throw DomainError("plane height must lie strictly between floor and ceiling");
  }
  if (!(grid_step > 0.0)) throw DomainError("grid step must be positive");
  const ChannelModel model(config, threads);
  DelaySpreadMap map;
  map.plane_height = plane_height;
  map.step = grid_step;
  map.xs = grid_axis(config.room.width, grid_step);
  map.ys = grid_axis(config.room.depth, grid_step);
  map.spread.assign(map.xs.size() * map.ys.size(), 0.0);
  parallel_for(map.spread.size(), threads, [&](std::size_t k) {
    const Vec3 p{map.xs[k % map.xs.size()], map.ys[k / map.xs.size()], plane_height};
    map.spread[k] = model.analyze(p).spread.rms_spread;
  });
  return map;
}

}  // namespace vlc
