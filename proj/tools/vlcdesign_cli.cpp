// vlcdesign: command-line front end for the design flow.
//
// Exit codes: 0 ok, 1 internal error, 2 bad arguments, 3 scenario file not
// found, 4 invalid flag combination, 5 domain error, 6 malformed or invalid
// scenario. Errors go to stderr as one JSON object.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vlc/channel.hpp"
#include "vlc/errors.hpp"
#include "vlc/mc.hpp"
#include "vlc/modem.hpp"
#include "vlc/noise.hpp"
#include "vlc/photometry.hpp"
#include "vlc/qfunc.hpp"
#include "vlc/report.hpp"
#include "vlc/scenario.hpp"
#include "vlc/scenario_io.hpp"
#include "vlc/tcm.hpp"

namespace {

enum Exit {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kMissingScenario = 3,
  kBadCombination = 4,
  kDomain = 5,
  kBadScenario = 6,
};

struct CliError {
  Exit code;
  std::string kind;
  std::string message;
  nlohmann::json detail = nullptr;
};

[[noreturn]] void fail(Exit code, std::string kind, std::string message,
                       nlohmann::json detail = nullptr) {
  throw CliError{code, std::move(kind), std::move(message), std::move(detail)};
}

int report_error(const CliError& e) {
  nlohmann::json j{{"error", e.kind}, {"message", e.message}, {"exit_code", e.code}};
  if (!e.detail.is_null()) j["detail"] = e.detail;
  std::cerr << j.dump() << '\n';
  return e.code;
}

vlc::ScenarioConfig scenario_from(const std::string& path) {
  if (path.empty()) return vlc::office_scenario();
  if (!std::filesystem::exists(path)) {
    fail(kMissingScenario, "missing_scenario", "scenario file not found: " + path);
  }
  vlc::ScenarioConfig config;
  try {
    config = vlc::load_scenario(path);
  } catch (const vlc::ConfigError& e) {
    fail(kBadScenario, "bad_scenario", e.what());
  }
  const auto violations = vlc::validate(config);
  if (!violations.empty()) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : violations) v.push_back({{"field", x.field}, {"message", x.message}});
    fail(kBadScenario, "invalid_scenario", "scenario failed validation", v);
  }
  return config;
}

// "a:b:step", inclusive of b up to rounding; a single number is one point.
std::vector<double> parse_range(const std::string& text, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(kUsage, "bad_argument", std::string(flag) + ": not a number: " + item);
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    fail(kUsage, "bad_argument", std::string(flag) + ": expected a:b:step with a <= b, step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return out;
}

// "n/w[,n/w...]"
std::vector<std::pair<int, int>> parse_schemes(const std::string& text, const char* flag) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto slash = item.find('/');
    try {
      if (slash == std::string::npos) throw std::invalid_argument(item);
      std::size_t a = 0, b = 0;
      const int n = std::stoi(item.substr(0, slash), &a);
      const int w = std::stoi(item.substr(slash + 1), &b);
      if (a != slash || b != item.size() - slash - 1) throw std::invalid_argument(item);
      out.emplace_back(n, w);
    } catch (const std::exception&) {
      fail(kUsage, "bad_argument", std::string(flag) + ": expected n/w, got " + item);
    }
  }
  if (out.empty()) fail(kUsage, "bad_argument", std::string(flag) + ": no schemes given");
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kUsage, "bad_argument", "cannot write " + path);
  out << text;
}

void emit_json(const std::string& path, const nlohmann::json& j) { emit(path, j.dump(2) + "\n"); }

// CSV to `csv` (stdout when empty), manifest JSON to `json` (skipped when
// empty). Both on stdout is refused.
void emit_pair(const std::string& csv, const std::string& csv_text, const std::string& json,
               const nlohmann::json& manifest) {
  const bool csv_stdout = csv.empty() || csv == "-";
  if (csv_stdout && json == "-") {
    fail(kBadCombination, "invalid_combination", "CSV and JSON cannot both go to stdout");
  }
  emit(csv, csv_text);
  if (!json.empty()) emit_json(json, manifest);
}

vlc::OppmScheme single_scheme(const std::string& text, const char* flag) {
  const auto s = parse_schemes(text, flag);
  if (s.size() != 1) fail(kUsage, "bad_argument", std::string(flag) + ": expected one n/w");
  return vlc::OppmScheme::make(s[0].first, s[0].second);
}

nlohmann::json scenario_tag(const vlc::ScenarioConfig& config, const std::string& path) {
  return {{"scenario", path.empty() ? "built-in" : path}, {"scenario_hash", vlc::config_hash(config)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimmable OPPM visible-light link design"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

  std::string scenario;
  auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario, "Scenario JSON file (default: built-in office)");
  };

  // export-scenario
  std::string out_path;
  auto* export_cmd = app.add_subcommand("export-scenario", "Write a scenario as JSON");
  add_scenario(export_cmd);
  export_cmd->add_option("--out", out_path, "Output file (default stdout)");

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  add_scenario(validate_cmd);

  // illuminance-map
  double dimming = 100.0, height = 0.85, step = 0.1, lux_min = 200.0, lux_max = 800.0;
  std::string csv_path, json_path;
  auto* illum_cmd = app.add_subcommand("illuminance-map", "Horizontal illuminance grid");
  add_scenario(illum_cmd);
  illum_cmd->add_option("--dimming", dimming, "Perceived brightness, percent")->capture_default_str();
  illum_cmd->add_option("--height", height, "Plane height, m")->capture_default_str();
  illum_cmd->add_option("--step", step, "Grid step, m")->capture_default_str();
  illum_cmd->add_option("--lux-min", lux_min, "Compliance band lower bound")->capture_default_str();
  illum_cmd->add_option("--lux-max", lux_max, "Compliance band upper bound")->capture_default_str();
  illum_cmd->add_option("--csv", csv_path, "CSV output (default stdout)");
  illum_cmd->add_option("--json", json_path, "JSON summary output ('-' for stdout)");

  // dimming-interval
  std::vector<double> at;
  auto* interval_cmd = app.add_subcommand("dimming-interval", "Perceived-brightness range within a lux band");
  add_scenario(interval_cmd);
  interval_cmd->add_option("--lux-min", lux_min)->capture_default_str();
  interval_cmd->add_option("--lux-max", lux_max)->capture_default_str();
  interval_cmd->add_option("--at", at, "Evaluation point x y z (default: receiver)")->expected(3);

  // delay-spread
  bool want_map = false, want_ir = false;
  double ds_height = -1.0, ds_step = 0.25;
  auto* spread_cmd = app.add_subcommand("delay-spread", "RMS delay spread at the receiver or as a map");
  add_scenario(spread_cmd);
  spread_cmd->add_flag("--map", want_map, "CSV map over the receiver plane");
  spread_cmd->add_flag("--impulse-response", want_ir, "CSV of the discrete taps");
  spread_cmd->add_option("--step", ds_step, "Map step, m")->capture_default_str();
  spread_cmd->add_option("--height", ds_height, "Map plane height, m (default: receiver)");

  // rate-curve
  double bandwidth_hz = 20e6, lo = 0.0, hi = 100.0;
  int chips = 16;
  auto* rate_cmd = app.add_subcommand("rate-curve", "Maximum OPPM bit rate against perceived brightness");
  add_scenario(rate_cmd);
  rate_cmd->add_option("--bandwidth", bandwidth_hz, "Hz (default: scenario modulation bandwidth)");
  rate_cmd->add_option("--chips", chips, "Code length n")->capture_default_str();
  rate_cmd->add_option("--lo", lo, "Lowest perceived percent")->capture_default_str();
  rate_cmd->add_option("--hi", hi, "Highest perceived percent")->capture_default_str();

  // snr-curve
  std::string scheme_text, levels_text = "44:90:2";
  int curve_chips = 0;
  auto* snr_cmd = app.add_subcommand("snr-curve", "Channel SNR against perceived brightness");
  add_scenario(snr_cmd);
  snr_cmd->add_option("--scheme", scheme_text, "Single operating point n/w");
  snr_cmd->add_option("--chips", curve_chips, "Sweep levels at this n");
  snr_cmd->add_option("--levels", levels_text, "Perceived percent a:b:step")->capture_default_str();

  // ber-sweep
  std::string schemes_text = "8/2,16/8,32/8", snr_text;
  std::uint64_t seed = 1, max_symbols = 10'000'000, target_errors = 100;
  auto* ber_cmd = app.add_subcommand("ber-sweep", "Monte Carlo BER curves");
  ber_cmd->add_option("--schemes", schemes_text, "n/w list")->capture_default_str();
  ber_cmd->add_option("--snr", snr_text, "SNR grid a:b:step, dB")->required();
  ber_cmd->add_option("--seed", seed)->capture_default_str();
  ber_cmd->add_option("--max-symbols", max_symbols)->capture_default_str();
  ber_cmd->add_option("--target-errors", target_errors)->capture_default_str();
  ber_cmd->add_option("--csv", csv_path, "CSV output (default stdout)");
  ber_cmd->add_option("--json", json_path, "JSON manifest output ('-' for stdout)");

  // ber-analytic
  auto* analytic_cmd = app.add_subcommand("ber-analytic", "Closed-form BER against SNR");
  analytic_cmd->add_option("--schemes", schemes_text, "n/w list")->capture_default_str();
  analytic_cmd->add_option("--snr", snr_text, "SNR grid a:b:step, dB")->required();

  // scheme-table
  auto* table_cmd = app.add_subcommand("scheme-table", "OPPM symbol table, one n-tuple per line");
  table_cmd->add_option("--scheme", scheme_text, "n/w")->required();

  // min-code-length
  double threshold = 3e-3;
  std::string snr_value, candidates_text = "8,16,32,64,128";
  int ref_chips = 32;
  auto* mcl_cmd = app.add_subcommand("min-code-length", "Smallest n meeting a BER threshold");
  add_scenario(mcl_cmd);
  mcl_cmd->add_option("--dimming", dimming, "Perceived percent")->required();
  mcl_cmd->add_option("--snr", snr_value, "Channel SNR, dB (default: scenario noise model)");
  mcl_cmd->add_option("--threshold", threshold)->capture_default_str();
  mcl_cmd->add_option("--candidates", candidates_text)->capture_default_str();
  mcl_cmd->add_option("--seed", seed)->capture_default_str();
  mcl_cmd->add_option("--max-symbols", max_symbols)->capture_default_str();
  mcl_cmd->add_option("--target-errors", target_errors)->capture_default_str();
  mcl_cmd->add_option("--reference-chips", ref_chips, "n used for the noise-model SNR")
      ->capture_default_str();

  // tcm-gain
  int base_alphabet = 9;
  std::vector<int> dcs{4, 8, 16};
  bool exact = false;
  auto* tcm_cmd = app.add_subcommand("tcm-gain", "Coding gain over uncoded OPPM");
  tcm_cmd->add_option("--L", base_alphabet, "Uncoded alphabet size")->capture_default_str();
  tcm_cmd->add_option("--dc", dcs, "Intra-subset minimum distances")->delimiter(',');
  tcm_cmd->add_flag("--exact", exact, "Exact form instead of sqrt(d_c / 4)");

  // power-curve
  double ber_target = 1e-6;
  std::string power_levels = "44:90:2";
  int power_chips = 16;
  std::vector<int> power_dcs{8, 16};
  auto* power_cmd = app.add_subcommand("power-curve", "Required transmitted power against perceived brightness");
  add_scenario(power_cmd);
  power_cmd->add_option("--chips", power_chips)->capture_default_str();
  power_cmd->add_option("--levels", power_levels)->capture_default_str();
  power_cmd->add_option("--dc", power_dcs)->delimiter(',');
  power_cmd->add_option("--ber", ber_target)->capture_default_str();

  // design-report
  auto* report_cmd = app.add_subcommand("design-report", "Full design flow as one JSON document");
  add_scenario(report_cmd);
  report_cmd->add_option("--lux-min", lux_min)->capture_default_str();
  report_cmd->add_option("--lux-max", lux_max)->capture_default_str();
  report_cmd->add_option("--threshold", threshold)->capture_default_str();
  report_cmd->add_option("--seed", seed)->capture_default_str();
  report_cmd->add_option("--max-symbols", max_symbols)->capture_default_str();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      fail(kUsage, "bad_argument", e.what());
    }

    auto parse_ints = [](const std::string& text, const char* flag) {
      std::vector<int> out;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          out.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          fail(kUsage, "bad_argument", std::string(flag) + ": not an integer: " + item);
        }
      }
      return out;
    };

    if (*export_cmd) {
      const auto config = scenario_from(scenario);
      emit_json(out_path, vlc::to_json(config));
    } else if (*validate_cmd) {
      const auto config = scenario_from(scenario);
      emit_json("", {{"valid", true}, {"scenario_hash", vlc::config_hash(config)}});
    } else if (*illum_cmd) {
      const auto config = scenario_from(scenario);
      if (lux_min > lux_max) fail(kBadCombination, "invalid_combination", "--lux-min exceeds --lux-max");
      const auto map = vlc::illuminance_map(config, height, vlc::DimmingLevel::from_perceived(dimming),
                                            step, threads);
      nlohmann::json manifest = vlc::to_json(map, lux_min, lux_max);
      manifest.update(scenario_tag(config, scenario));
      manifest["perceived_percent"] = dimming;
      emit_pair(csv_path, vlc::illuminance_csv(map), json_path, manifest);
    } else if (*interval_cmd) {
      const auto config = scenario_from(scenario);
      if (lux_min > lux_max) fail(kBadCombination, "invalid_combination", "--lux-min exceeds --lux-max");
      const vlc::Vec3 point = at.empty() ? config.receiver.position : vlc::Vec3{at[0], at[1], at[2]};
      nlohmann::json j = vlc::to_json(vlc::dimming_interval(config, point, lux_min, lux_max));
      j["point"] = {point.x, point.y, point.z};
      j["band_lux"] = {lux_min, lux_max};
      j.update(scenario_tag(config, scenario));
      emit_json("", j);
    } else if (*spread_cmd) {
      const auto config = scenario_from(scenario);
      if (want_map && want_ir) {
        fail(kBadCombination, "invalid_combination", "--map and --impulse-response are exclusive");
      }
      if (want_map) {
        const double h = ds_height < 0.0 ? config.receiver.position.z : ds_height;
        emit("", vlc::delay_spread_csv(vlc::delay_spread_map(config, h, ds_step, threads)));
      } else if (want_ir) {
        emit("", vlc::impulse_response_csv(vlc::impulse_response(config, threads)));
      } else {
        nlohmann::json j = vlc::to_json(vlc::analyze_channel(config, threads));
        j.update(scenario_tag(config, scenario));
        emit_json("", j);
      }
    } else if (*rate_cmd) {
      const auto config = scenario_from(scenario);
      const double b = rate_cmd->count("--bandwidth") ? bandwidth_hz : config.modulation_bandwidth;
      if (lo > hi) fail(kBadCombination, "invalid_combination", "--lo exceeds --hi");
      emit("", vlc::rate_csv(vlc::rate_curve(chips, b, lo, hi)));
    } else if (*snr_cmd) {
      const auto config = scenario_from(scenario);
      const bool have_scheme = !scheme_text.empty();
      if (have_scheme == (curve_chips > 0)) {
        fail(kBadCombination, "invalid_combination", "give exactly one of --scheme or --chips");
      }
      if (have_scheme && snr_cmd->count("--levels")) {
        fail(kBadCombination, "invalid_combination", "--levels applies to --chips only");
      }
      const auto channel = vlc::analyze_channel(config, threads);
      std::vector<vlc::SnrPoint> points;
      if (have_scheme) {
        const auto s = single_scheme(scheme_text, "--scheme");
        const auto dim = vlc::DimmingLevel::from_duty_cycle(s.duty_cycle());
        vlc::SnrPoint p;
        p.perceived_percent = s.perceived_percent();
        p.chips = s.chips();
        p.weight = s.weight();
        p.budget = vlc::noise_budget(config, dim, s, channel);
        p.snr_db = vlc::snr_db(p.budget);
        points.push_back(p);
      } else {
        const auto levels = parse_range(levels_text, "--levels");
        points = vlc::snr_curve(config, channel, curve_chips, levels);
      }
      emit("", vlc::snr_csv(points));
    } else if (*ber_cmd) {
      vlc::McConfig mc;
      mc.seed = seed;
      mc.max_symbols = max_symbols;
      mc.target_errors = target_errors;
      mc.snr_grid_db = parse_range(snr_text, "--snr");
      mc.schemes = parse_schemes(schemes_text, "--schemes");
      mc.threads = threads;
      const auto curves = vlc::ber_sweep(mc);
      nlohmann::json manifest{{"seed", mc.seed},
                              {"config_hash", vlc::config_hash(mc)},
                              {"max_symbols", mc.max_symbols},
                              {"target_errors", mc.target_errors},
                              {"schemes", mc.schemes},
                              {"snr_grid_db", mc.snr_grid_db},
                              {"columns", {"n", "w", "snr_db", "ber", "ci_low", "ci_high", "bits",
                                           "errors", "analytic"}}};
      emit_pair(csv_path, vlc::ber_csv(curves), json_path, manifest);
    } else if (*analytic_cmd) {
      const auto grid = parse_range(snr_text, "--snr");
      std::string out = "n,w,snr_db,argument,ber\n";
      char buf[160];
      for (const auto& [n, w] : parse_schemes(schemes_text, "--schemes")) {
        const auto s = vlc::OppmScheme::make(n, w);
        for (double snr : grid) {
          const double x = vlc::decision_argument(s, snr);
          std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.10g,%.10g\n", n, w, snr, x, vlc::q_function(x));
          out += buf;
        }
      }
      emit("", out);
    } else if (*table_cmd) {
      emit("", single_scheme(scheme_text, "--scheme").table_text());
    } else if (*mcl_cmd) {
      const auto candidates = parse_ints(candidates_text, "--candidates");
      vlc::McConfig mc;
      mc.seed = seed;
      mc.max_symbols = max_symbols;
      mc.target_errors = target_errors;
      mc.threads = threads;
      double snr = 0.0;
      nlohmann::json source;
      if (!snr_value.empty()) {
        if (!scenario.empty()) {
          fail(kBadCombination, "invalid_combination", "--snr and --scenario are exclusive");
        }
        snr = parse_range(snr_value, "--snr").at(0);
        source = "given";
      } else {
        const auto config = scenario_from(scenario);
        const auto channel = vlc::analyze_channel(config, threads);
        const auto ref = vlc::OppmScheme::make(ref_chips, vlc::weight_for_dimming(ref_chips, dimming));
        snr = vlc::snr_db(config, vlc::DimmingLevel::from_perceived(dimming), ref, channel);
        source = scenario_tag(config, scenario);
      }
      nlohmann::json j = vlc::to_json(vlc::min_code_length(dimming, candidates, snr, threshold, mc));
      j["snr_source"] = source;
      j["seed"] = seed;
      j["config_hash"] = vlc::config_hash(mc);
      emit_json("", j);
    } else if (*tcm_cmd) {
      nlohmann::json gains = nlohmann::json::array();
      for (int dc : dcs) {
        gains.push_back({{"d_c", dc}, {"gain_db", vlc::coding_gain_db(base_alphabet, dc, exact)}});
      }
      emit_json("", {{"L", base_alphabet}, {"form", exact ? "exact" : "approximate"}, {"gains", gains}});
    } else if (*power_cmd) {
      const auto config = scenario_from(scenario);
      const auto channel = vlc::analyze_channel(config, threads);
      const auto levels = parse_range(power_levels, "--levels");
      emit("", vlc::power_curve_csv(
                   vlc::power_vs_dimming_curve(config, channel, power_chips, levels, power_dcs, ber_target),
                   power_dcs));
    } else if (*report_cmd) {
      const auto config = scenario_from(scenario);
      if (lux_min > lux_max) fail(kBadCombination, "invalid_combination", "--lux-min exceeds --lux-max");
      vlc::DesignOptions options;
      options.lux_min = lux_min;
      options.lux_max = lux_max;
      options.threshold = threshold;
      options.mc.seed = seed;
      options.mc.max_symbols = max_symbols;
      options.threads = threads;
      nlohmann::json j = vlc::to_json(vlc::design_report(config, options));
      j["seed"] = seed;
      emit_json("", j);
    }
    return kOk;
  } catch (const CliError& e) {
    return report_error(e);
  } catch (const vlc::DomainError& e) {
    return report_error({kDomain, "domain_error", e.what()});
  } catch (const vlc::ConfigError& e) {
    return report_error({kBadScenario, "bad_scenario", e.what()});
  } catch (const std::exception& e) {
    return report_error({kInternal, "internal_error", e.what()});
  }
}
