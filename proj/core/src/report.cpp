#include "vlc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vlc/errors.hpp"
#include "vlc/modem.hpp"
#include "vlc/scenario_io.hpp"

namespace vlc {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// JSON has no infinities; they are written as null.
nlohmann::json jnum(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class Map>
std::string grid_csv(const Map& map, const std::vector<double>& values, const char* column) {
  std::string out = "x,y,";
  out += column;
  out += '\n';
  for (std::size_t iy = 0; iy < map.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < map.xs.size(); ++ix) {
      out += num(map.xs[ix]) + ',' + num(map.ys[iy]) + ',' + num(values[iy * map.xs.size() + ix]) +
             '\n';
    }
  }
  return out;
}

}  // namespace

std::string config_hash(const ScenarioConfig& config) {
  return hex16(fnv1a64(vlc::to_json(config).dump()));
}

std::string config_hash(const McConfig& mc) {
  nlohmann::json j;
  j["seed"] = mc.seed;
  j["max_symbols"] = mc.max_symbols;
  j["target_errors"] = mc.target_errors;
  j["snr_grid_db"] = mc.snr_grid_db;
  j["schemes"] = mc.schemes;
  return hex16(fnv1a64(j.dump()));
}

std::string illuminance_csv(const IlluminanceMap& map) { return grid_csv(map, map.lux, "lux"); }

std::string delay_spread_csv(const DelaySpreadMap& map) {
  return grid_csv(map, map.spread, "rms_spread_s");
}

std::string impulse_response_csv(const ImpulseResponse& h) {
  std::vector<Tap> taps = h.los;
  taps.insert(taps.end(), h.nlos.begin(), h.nlos.end());
  std::stable_sort(taps.begin(), taps.end(),
                   [](const Tap& a, const Tap& b) { return a.delay < b.delay; });
  std::string out = "delay_s,gain\n";
  for (const Tap& t : taps) out += num(t.delay) + ',' + num(t.gain) + '\n';
  return out;
}

std::string ber_csv(std::span<const BerCurve> curves) {
  std::string out = "n,w,snr_db,ber,ci_low,ci_high,bits,errors,analytic\n";
  for (const BerCurve& c : curves) {
    for (const BerEstimate& e : c.points) {
      out += std::to_string(c.chips) + ',' + std::to_string(c.weight) + ',' + num(e.snr_db) + ',' +
             num(e.ber) + ',' + num(e.ci_low) + ',' + num(e.ci_high) + ',' +
             std::to_string(e.bits) + ',' + std::to_string(e.errors) + ',' + num(e.analytic) + '\n';
    }
  }
  return out;
}

std::string snr_csv(std::span<const SnrPoint> points) {
  std::string out =
      "perceived_percent,n,w,snr_db,received_power_w,sigma2_shot,sigma2_thermal,isi_term,n0\n";
  for (const SnrPoint& p : points) {
    out += num(p.perceived_percent) + ',' + std::to_string(p.chips) + ',' +
           std::to_string(p.weight) + ',' + num(p.snr_db) + ',' + num(p.budget.received_los_power) +
           ',' + num(p.budget.sigma2_shot) + ',' + num(p.budget.sigma2_thermal) + ',' +
           num(p.budget.isi_term) + ',' + num(p.budget.n0) + '\n';
  }
  return out;
}

std::string power_curve_csv(std::span<const PowerCurvePoint> points,
                            std::span<const int> min_distances) {
  std::string out = "perceived_percent,n,w,uncoded_dbm";
  for (int d : min_distances) out += ",tcm_dc" + std::to_string(d) + "_dbm";
  out += '\n';
  for (const PowerCurvePoint& p : points) {
    out += num(p.perceived_percent) + ',' + std::to_string(p.chips) + ',' +
           std::to_string(p.weight) + ',' + num(p.uncoded_dbm);
    for (double v : p.tcm_dbm) out += ',' + num(v);
    out += '\n';
  }
  return out;
}

std::vector<RatePoint> rate_curve(int chips, double bandwidth_hz, double lo_percent,
                                  double hi_percent) {
  if (chips < 2) throw DomainError("rate curve needs n >= 2");
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be positive");
  std::vector<RatePoint> out;
  for (int w = 1; w < chips; ++w) {
    const OppmScheme s = OppmScheme::make(chips, w);
    const double p = s.perceived_percent();
    if (p < lo_percent || p > hi_percent) continue;
    out.push_back({chips, w, p, max_bit_rate(s, bandwidth_hz), spectral_efficiency(s)});
  }
  return out;
}

std::string rate_csv(std::span<const RatePoint> points) {
  std::string out = "perceived_percent,n,w,max_bit_rate_bps,spectral_efficiency\n";
  for (const RatePoint& p : points) {
    out += num(p.perceived_percent) + ',' + std::to_string(p.chips) + ',' +
           std::to_string(p.weight) + ',' + num(p.bit_rate) + ',' + num(p.spectral_efficiency) +
           '\n';
  }
  return out;
}

nlohmann::json to_json(const IlluminanceMap& map, double lux_lo, double lux_hi) {
  const auto [ax, ay] = map.argmax();
  return {{"plane_height", map.plane_height},
          {"step", map.step},
          {"min_lux", map.min()},
          {"max_lux", map.max()},
          {"argmax", {ax, ay}},
          {"band_lux", {lux_lo, lux_hi}},
          {"compliant_fraction", map.compliant_fraction(lux_lo, lux_hi)}};
}

nlohmann::json to_json(const DimmingInterval& interval) {
  nlohmann::json j{{"empty", interval.empty}, {"full_on_lux", interval.full_on_lux}};
  if (interval.empty) {
    j["low_percent"] = nullptr;
    j["high_percent"] = nullptr;
  } else {
    j["low_percent"] = interval.low_percent;
    j["high_percent"] = interval.high_percent;
  }
  return j;
}

nlohmann::json to_json(const ChannelSummary& c) {
  return {{"receiver", {c.receiver_position.x, c.receiver_position.y, c.receiver_position.z}},
          {"los_gain", c.los_gain},
          {"nlos_gain", c.nlos_gain},
          {"dc_gain", c.dc_gain()},
          {"first_arrival_s", c.first_arrival},
          {"mean_delay_s", c.spread.mean_delay},
          {"rms_spread_s", c.spread.rms_spread},
          {"rate_bound_bps", jnum(c.spread.max_isi_free_rate)}};
}

nlohmann::json to_json(const NoiseBudget& b) {
  return {{"bandwidth_hz", b.bandwidth},
          {"bit_rate_bps", b.bit_rate},
          {"symbol_period_s", b.symbol_period},
          {"transmitted_power_w", b.transmitted_power},
          {"received_los_power_w", b.received_los_power},
          {"received_total_power_w", b.received_total_power},
          {"received_isi_power_w", b.received_isi_power},
          {"signal_current_a", b.signal_current},
          {"sigma2_shot", b.sigma2_shot},
          {"sigma2_thermal", b.sigma2_thermal},
          {"isi_term", b.isi_term},
          {"total_variance", b.total_variance},
          {"n0", b.n0},
          {"snr_db", jnum(snr_db(b))}};
}

nlohmann::json to_json(const BerEstimate& e) {
  return {{"snr_db", jnum(e.snr_db)}, {"ber", e.ber},         {"ci_low", e.ci_low},
          {"ci_high", e.ci_high},     {"bits", e.bits},       {"errors", e.errors},
          {"symbols", e.symbols},     {"analytic", e.analytic}};
}

nlohmann::json to_json(const CodeLengthDecision& d) {
  nlohmann::json cand = nlohmann::json::array();
  for (std::size_t i = 0; i < d.candidates.size(); ++i) {
    nlohmann::json c = to_json(d.candidate_ber[i]);
    c["n"] = d.candidates[i];
    c["w"] = d.weights[i];
    c["meets_threshold"] = d.candidate_ber[i].ber <= d.threshold;
    cand.push_back(std::move(c));
  }
  nlohmann::json j{{"perceived_percent", d.perceived_percent},
                   {"channel_snr_db", jnum(d.channel_snr_db)},
                   {"threshold", d.threshold},
                   {"candidates", std::move(cand)}};
  if (d.chosen_chips) {
    j["feasible"] = true;
    j["n"] = *d.chosen_chips;
    j["w"] = *d.chosen_weight;
    j["ber"] = *d.chosen_ber;
  } else {
    j["feasible"] = false;
    j["n"] = nullptr;
    j["w"] = nullptr;
    j["ber"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const TcmScheme& t) {
  nlohmann::json j{{"base_alphabet", t.base_alphabet},
                   {"duty_cycle", t.duty_cycle},
                   {"coded_alphabet", t.coded_alphabet},
                   {"exact_chips", t.exact_chips},
                   {"n_c", t.chips},
                   {"w_c", t.weight},
                   {"states", t.states},
                   {"d_c", t.min_distance}};
  j["warning"] = t.warning ? nlohmann::json(*t.warning) : nlohmann::json(nullptr);
  return j;
}

DesignReport design_report(const ScenarioConfig& config, const DesignOptions& options) {
  if (options.candidates.empty()) throw DomainError("no candidate code lengths");
  DesignReport r;
  r.scenario_hash = config_hash(config);
  r.interval = dimming_interval(config, config.receiver.position, options.lux_min,
                                options.lux_max);
  r.channel = analyze_channel(config, options.threads);

  McConfig mc = options.mc;
  mc.threads = options.threads;
  for (double level : options.perceived_levels) {
    DesignLevel d;
    d.perceived_percent = level;
    const int w_ref = weight_for_dimming(options.reference_chips, level);
    const OppmScheme ref = OppmScheme::make(options.reference_chips, w_ref);
    d.channel_snr_db = snr_db(config, DimmingLevel::from_perceived(level), ref, r.channel);
    d.decision = min_code_length(level, options.candidates, d.channel_snr_db, options.threshold, mc);
    d.tcm_base_chips = d.decision.chosen_chips.value_or(options.candidates.back());
    d.tcm_base_weight = weight_for_dimming(d.tcm_base_chips, level);
    const OppmScheme base = OppmScheme::make(d.tcm_base_chips, d.tcm_base_weight);
    double best = -std::numeric_limits<double>::infinity();
    for (int states : options.trellis_states) {
      TcmScheme t;
      try {
        t = coded_scheme(base, states);
      } catch (const DomainError&) {
        continue;
      }
      const double g = coding_gain_db(t.base_alphabet, t.min_distance, true);
      if (g > best) {
        best = g;
        d.recommended_states = states;
      }
      d.tcm.push_back(std::move(t));
      d.tcm_gain_db.push_back(g);
    }
    r.levels.push_back(std::move(d));
  }
  return r;
}

nlohmann::json to_json(const DesignReport& r) {
  nlohmann::json levels = nlohmann::json::array();
  for (const DesignLevel& d : r.levels) {
    nlohmann::json tcm = nlohmann::json::array();
    for (std::size_t i = 0; i < d.tcm.size(); ++i) {
      nlohmann::json t = to_json(d.tcm[i]);
      t["gain_db"] = d.tcm_gain_db[i];
      tcm.push_back(std::move(t));
    }
    levels.push_back({{"perceived_percent", d.perceived_percent},
                      {"channel_snr_db", jnum(d.channel_snr_db)},
                      {"min_code_length", to_json(d.decision)},
                      {"tcm_base", {d.tcm_base_chips, d.tcm_base_weight}},
                      {"tcm", std::move(tcm)},
                      {"recommended_states", d.recommended_states
                                                 ? nlohmann::json(*d.recommended_states)
                                                 : nlohmann::json(nullptr)}});
  }
  return {{"scenario_hash", r.scenario_hash},
          {"dimming_interval", to_json(r.interval)},
          {"channel", to_json(r.channel)},
          {"levels", std::move(levels)}};
}

}  // namespace vlc
