// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vlc/channel.hpp"
#include "vlc/mc.hpp"
#include "vlc/modem.hpp"
#include "vlc/noise.hpp"
#include "vlc/photometry.hpp"
#include "vlc/qfunc.hpp"
#include "vlc/scenario.hpp"
#include "vlc/tcm.hpp"

using namespace vlc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("%s %d %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& text) {
  std::printf("     %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

void dimming_interval_check() {
  const auto t0 = Clock::now();
  const auto c = office_scenario();
  const auto iv = dimming_interval(c, {1.0, 1.0, 0.85}, 200.0, 800.0);
  const double t = seconds_since(t0);
  const bool ok = !iv.empty && std::abs(iv.low_percent - 44.0) <= 3.0 &&
                  std::abs(iv.high_percent - 90.0) <= 3.0 && t < 5.0;
  verdict(1, ok,
          fmt("dimming interval (%.1f, %.1f)%% vs (44, 90)%% +/-3 points; full-on %.1f lx; %.2f s (< 5 s)",
              iv.low_percent, iv.high_percent, iv.full_on_lux, t));
}

void delay_spread_check() {
  auto c = office_scenario();
  const auto t0 = Clock::now();
  const auto coarse = analyze_channel(c);
  const double t_coarse = seconds_since(t0);
  c.room.mesh_resolution = 0.05;
  const auto t1 = Clock::now();
  const auto fine = analyze_channel(c);
  const double t_fine = seconds_since(t1);

  const double d = coarse.spread.rms_spread;
  const double rate = coarse.spread.max_isi_free_rate;
  const double change = std::abs(fine.spread.rms_spread - d) / d;
  const bool ok = rel_close(d, 1.28e-9, 0.15) && rel_close(rate, 78e6, 0.15) && change < 0.02 &&
                  t_fine < 60.0;
  verdict(2, ok,
          fmt("delay spread %.4f ns vs 1.28 ns +/-15%%; bound %.2f Mbps vs 78 +/-15%%; "
              "0.05 m mesh %.4f ns (change %.2f%% < 2%%) in %.2f s (< 60 s)",
              d * 1e9, rate / 1e6, fine.spread.rms_spread * 1e9, change * 100, t_fine));
  note(fmt("0.1 m mesh %.2f s; H_LOS %.4e, H_NLOS %.4e", t_coarse, coarse.los_gain, coarse.nlos_gain));
}

bool within_ulps(double a, double b, int ulps) {
  return std::abs(a - b) <= ulps * std::numeric_limits<double>::epsilon() * std::abs(b);
}

void rate_formula_check() {
  bool ok = true;
  std::string worst;
  // Hand values written out from the definitions.
  struct Row {
    int n, w;
    double bandwidth, rb_max, se;
  };
  const Row rows[] = {
      {16, 8, 20e6, 31.699250e6, 1.5849625},  // 20e6 * 0.5 * log2 9
      {32, 8, 20e6, 23.219281e6, 1.1609640},  // 20e6 * 0.25 * log2 25
      {8, 2, 10e6, 7.0183873e6, 0.70183873},  // 10e6 * 0.25 * log2 7
      {128, 16, 50e6, 42.626119e6, 0.85252237},  // 50e6 * 0.125 * log2 113
  };
  for (const Row& r : rows) {
    const auto s = OppmScheme::make(r.n, r.w);
    const bool row_ok = rel_close(max_bit_rate(s, r.bandwidth), r.rb_max, 5e-7) &&
                        rel_close(spectral_efficiency(s), r.se, 5e-7) &&
                        rel_close(bandwidth(s, r.rb_max), r.bandwidth, 5e-7);
    if (!row_ok) worst += fmt(" (%d,%d)", r.n, r.w);
    ok = ok && row_ok;
  }
  // Round trips on a dense set of schemes and rates, to floating-point
  // rounding (4 ulp).
  int trips = 0, bad = 0;
  for (int n = 2; n <= 128; ++n) {
    for (int w = 1; w < n; ++w) {
      const auto s = OppmScheme::make(n, w);
      for (double rb : {1.0, 9.6e3, 31.7e6, 1.25e9}) {
        ++trips;
        if (!within_ulps(max_bit_rate(s, bandwidth(s, rb)), rb, 4)) ++bad;
        if (!within_ulps(bandwidth(s, max_bit_rate(s, rb)), rb, 4)) ++bad;
      }
      ++trips;
      if (!within_ulps(spectral_efficiency(s), max_bit_rate(s, 1.0), 4)) ++bad;
    }
  }
  ok = ok && bad == 0;
  const auto s = OppmScheme::make(16, 8);
  verdict(3, ok,
          fmt("rate formulas: (16,8) at 20 MHz -> %.6f Mbps; hand rows%s; %d/%d round trips within 4 ulp",
              max_bit_rate(s, 20e6) / 1e6, worst.empty() ? " all match to 6 digits" : worst.c_str(),
              trips - bad, trips));
}

void mc_oracle_check() {
  const auto t0 = Clock::now();
  McConfig mc;
  mc.seed = 20240601;
  mc.schemes = {{8, 2}, {16, 8}, {32, 8}};
  // Ten SNR points per scheme chosen on the argument axis, x = 0.5 .. 4.1.
  std::vector<double> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(0.5 + 0.4 * i);

  int checked = 0, inside = 0;
  std::string detail;
  double min_ratio = 1e9, max_ratio = 0;
  for (std::size_t si = 0; si < mc.schemes.size(); ++si) {
    const auto [n, w] = mc.schemes[si];
    const auto s = OppmScheme::make(n, w);
    McConfig one = mc;
    one.schemes = {mc.schemes[si]};
    one.snr_grid_db.clear();
    for (double x : xs) one.snr_grid_db.push_back(10 * std::log10(x * x * 2.0 * w * w * w / (n * n)));
    const auto curve = ber_sweep(one).front();
    for (const auto& e : curve.points) {
      if (e.errors < 100) continue;
      ++checked;
      const double p = e.analytic;
      const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(e.bits));
      const bool in = std::abs(e.ber - p) <= 3 * sigma;
      inside += in;
      min_ratio = std::min(min_ratio, e.ber / p);
      max_ratio = std::max(max_ratio, e.ber / p);
      if (!in && detail.size() < 300) detail += fmt(" (%d,%d)@%.2fdB:%.3g/%.3g", n, w, e.snr_db, e.ber, p);
    }
  }
  const double t = seconds_since(t0);
  verdict(4, checked > 0 && inside == checked && t < 600.0,
          fmt("MC vs closed form: %d/%d points with >= 100 errors inside 3 sigma; BER/Q(x) in "
              "[%.3f, %.3f]; %.1f s (< 600 s)",
              inside, checked, min_ratio, max_ratio, t));
  if (!detail.empty()) note("outside:" + detail);

  // Single reference point: (32, 8) where the closed form gives 1e-3.
  const auto s = OppmScheme::make(32, 8);
  const double x = q_inverse(1e-3);
  const double snr = 10 * std::log10(x * x * 2.0 * 512 / 1024);
  const auto e = simulate_ber(s, snr, mc, 7);
  const double sigma = std::sqrt(1e-3 * (1 - 1e-3) / static_cast<double>(e.bits));
  note(fmt("(32,8) at %.3f dB: simulated %.4g vs 1e-3 (3 sigma %.2g) -> %s", snr, e.ber, 3 * sigma,
           std::abs(e.ber - 1e-3) <= 3 * sigma ? "inside" : "outside"));
}

void table_check() {
  const auto t0 = Clock::now();
  McConfig mc;
  mc.seed = 7;
  const std::vector<int> candidates{8, 16, 32, 64, 128};
  const double levels[] = {35, 50, 75, 86};
  const double snrs[] = {-6.2, -0.5, 6.5, 8.5};
  const int expected[] = {128, 32, 8, 8};
  bool ok = true;
  std::string got;
  for (int i = 0; i < 4; ++i) {
    const auto d = min_code_length(levels[i], candidates, snrs[i], 3e-3, mc);
    ok = ok && d.chosen_chips && *d.chosen_chips == expected[i];
    got += d.chosen_chips ? fmt(" %d", *d.chosen_chips) : std::string(" none");
    std::string bers;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      bers += fmt(" n=%d:%.3g", candidates[k], d.candidate_ber[k].ber);
    }
    note(fmt("%g%% at %.1f dB:", levels[i], snrs[i]) + bers);
  }
  verdict(5, ok, "minimum code length at 35/50/75/86% -> {" + got + " } vs {128, 32, 8, 8}" +
                     fmt("; %.1f s", seconds_since(t0)));
}

void noise_anchor_check() {
  auto c = office_scenario();
  const auto ch = analyze_channel(c);
  auto scheme_at = [](double p) { return OppmScheme::make(32, weight_for_dimming(32, p)); };
  const double g = calibrate_thermal_conductance(c, DimmingLevel::from_perceived(50), scheme_at(50), ch, -0.5);
  c.noise.thermal_conductance_s = g;
  const double levels[] = {35, 75, 86};
  const double target[] = {-6.2, 6.5, 8.5};
  bool ok = rel_close(g, kOfficeThermalConductance, 1e-9);
  std::string got;
  for (int i = 0; i < 3; ++i) {
    const double s = snr_db(c, DimmingLevel::from_perceived(levels[i]), scheme_at(levels[i]), ch);
    ok = ok && std::abs(s - target[i]) <= 1.0;
    got += fmt(" %.2f", s);
  }
  verdict(6, ok,
          fmt("SNR at 35/75/86%% ->", 0) + got +
              fmt(" dB vs {-6.2, 6.5, 8.5} +/-1 dB; calibrated G = %.6f S (committed %.6f)", g,
                  kOfficeThermalConductance));
}

void tcm_check() {
  bool ok = true;
  const auto coded = coded_scheme(OppmScheme::make(16, 8), 4);
  ok = ok && coded.chips == 34 && coded.weight == 17 && coded.base_alphabet == 9;
  const auto direct = coded_parameters(9, 0.5, 8);
  ok = ok && direct.chips == 34 && direct.weight == 17;
  const double approx16 = coding_gain_db(9, 16, false);
  ok = ok && std::abs(approx16 - 3.01) <= 0.01;
  double worst_gap = 0.0;
  for (int d : {4, 8, 16}) {
    worst_gap = std::max(worst_gap, std::abs(coding_gain_db(9, d, true) - coding_gain_db(9, d, false)));
  }
  ok = ok && worst_gap < 0.15;

  double worst_rel = 0.0;
  const auto base = OppmScheme::make(16, 8);
  for (int d : {4, 8, 16, 32}) {
    for (double n0 : {1e-21, 3e-19}) {
      for (double ber : {1e-3, 1e-6, 1e-9}) {
        const double ratio = required_power_uncoded(base, n0, 1e-7, ber) /
                             required_power_tcm(coded_parameters(9, 0.5, d), n0, 1e-7, ber);
        const double gain = std::pow(10.0, coding_gain_db(9, d, true) / 10.0);
        worst_rel = std::max(worst_rel, std::abs(ratio - gain) / gain);
      }
    }
  }
  ok = ok && worst_rel <= 1e-9;

  bool monotone = true;
  double prev = -1e9;
  for (int d = 2; d <= 64; d += 2) {
    const double g = coding_gain_db(9, d, true);
    monotone = monotone && g > prev;
    prev = g;
  }
  const double at4 = coding_gain_db(9, 4, true);
  ok = ok && monotone && std::abs(at4) <= 0.3;
  verdict(7, ok,
          fmt("TCM: coded (n_c, w_c) = (%d, %d); approx gain d_c=16 %.4f dB; max exact/approx gap "
              "%.3f dB; power ratio vs exact gain rel err %.1e; monotone %s; d_c=4 %.3f dB",
              coded.chips, coded.weight, approx16, worst_gap, worst_rel, monotone ? "yes" : "no", at4));
  note(fmt("exact gains L=9: d_c=8 %.3f dB, d_c=16 %.3f dB", coding_gain_db(9, 8, true),
           coding_gain_db(9, 16, true)));
}

void property_check() {
  std::vector<std::string> broken;

  // Photometry: linear in the duty cycle and additive over fixtures.
  {
    const auto c = office_scenario();
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.05, 4.95);
    bool good = true;
    for (int i = 0; i < 50; ++i) {
      const Vec3 p{u(rng), u(rng), 0.85};
      const double a = illuminance_at(c, p, DimmingLevel::from_duty_cycle(0.2));
      const double b = illuminance_at(c, p, DimmingLevel::from_duty_cycle(0.7));
      good = good && rel_close(b, 3.5 * a, 1e-12);
      double sum = 0.0;
      for (const auto& f : c.fixtures) sum += fixture_illuminance(f, p, DimmingLevel::from_duty_cycle(0.2));
      good = good && rel_close(a, sum, 1e-12);
    }
    if (!good) broken.push_back("photometry");
  }

  // Channel: lengths times k scale gains by 1/k^2 and delays by k.
  {
    auto c = office_scenario();
    c.room.mesh_resolution = 0.25;
    bool good = true;
    const auto a = analyze_channel(c);
    for (double k : {0.5, 2.0, 3.0}) {
      const auto b = analyze_channel(scaled(c, k));
      good = good && rel_close(b.los_gain, a.los_gain / (k * k), 1e-9) &&
             rel_close(b.nlos_gain, a.nlos_gain / (k * k), 1e-9) &&
             rel_close(b.spread.rms_spread, a.spread.rms_spread * k, 1e-7) &&
             rel_close(b.first_arrival, a.first_arrival * k, 1e-9);
    }
    if (!good) broken.push_back("channel scale");
  }

  // Set partition distance law, exhaustive for n <= 64.
  {
    bool good = true;
    for (int n = 2; n <= 64 && good; ++n) {
      for (int w = 1; w < n && good; ++w) {
        const auto s = OppmScheme::make(n, w);
        const int depth = std::bit_width(static_cast<unsigned>(s.alphabet_size())) - 1;
        const auto tree = set_partition(s, depth);
        for (int level = 0; level <= depth; ++level) {
          int brute = 1 << 30;
          for (const auto& sub : tree.levels[level].subsets) {
            for (std::size_t i = 0; i < sub.size(); ++i) {
              for (std::size_t j = i + 1; j < sub.size(); ++j) {
                brute = std::min(brute, oracle::hamming(sub[i], sub[j], w));
              }
            }
          }
          const auto& got = tree.levels[level].min_distance;
          if (brute == 1 << 30) {
            good = good && !got;
          } else {
            good = good && got && *got == brute && brute == 2 * std::min(1 << level, w);
          }
        }
      }
    }
    if (!good) broken.push_back("partition law");
  }

  // Window decoder against exhaustive correlation ML, n <= 16.
  {
    bool good = true;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> small(-1, 2);
    for (int n = 2; n <= 16; ++n) {
      for (int w = 1; w < n; ++w) {
        const auto s = OppmScheme::make(n, w);
        for (int t = 0; t < 200; ++t) {
          std::vector<double> y(n);
          for (auto& v : y) v = t % 2 ? small(rng) : g(rng);
          good = good && decode_hard(s, y) == oracle::ml_decision(y, w, s.alphabet_size()) &&
                 decode_hard(s, y, s.labeled_symbols()) == oracle::ml_decision(y, w, s.labeled_symbols());
        }
      }
    }
    if (!good) broken.push_back("decoder");
  }

  // Determinism under fixed seeds across worker counts.
  {
    McConfig mc;
    mc.seed = 31;
    mc.schemes = {{8, 2}, {16, 8}, {32, 8}};
    mc.snr_grid_db = {0, 4, 8};
    std::vector<std::vector<std::uint64_t>> runs;
    for (unsigned threads : {1u, 2u, 5u}) {
      mc.threads = threads;
      std::vector<std::uint64_t> flat;
      for (const auto& c : ber_sweep(mc)) {
        for (const auto& e : c.points) {
          flat.push_back(e.errors);
          flat.push_back(e.bits);
        }
      }
      runs.push_back(flat);
    }
    auto c = office_scenario();
    c.room.mesh_resolution = 0.25;
    const auto m1 = illuminance_map(c, 0.85, DimmingLevel::from_duty_cycle(0.5), 0.25, 1);
    const auto m4 = illuminance_map(c, 0.85, DimmingLevel::from_duty_cycle(0.5), 0.25, 4);
    const auto s1 = ChannelModel(c, 1).analyze();
    const auto s4 = ChannelModel(c, 4).analyze();
    const bool good = runs[0] == runs[1] && runs[1] == runs[2] && m1.lux == m4.lux &&
                      s1.spread.rms_spread == s4.spread.rms_spread && s1.nlos_gain == s4.nlos_gain;
    if (!good) broken.push_back("determinism");
  }

  std::string what = "property suites (photometry, channel scale, partition law n<=64, decoder n<=16, determinism)";
  if (!broken.empty()) {
    what += ": broken";
    for (const auto& b : broken) what += " " + b;
  }
  verdict(8, broken.empty(), what);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  dimming_interval_check();
  delay_spread_check();
  rate_formula_check();
  mc_oracle_check();
  table_check();
  noise_anchor_check();
  tcm_check();
  property_check();
  std::printf("%d of 8 criteria failed; %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
