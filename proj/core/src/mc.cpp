#include "vlc/mc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "vlc/errors.hpp"
#include "vlc/parallel.hpp"
#include "vlc/qfunc.hpp"

namespace vlc {

double decision_argument(const OppmScheme& scheme, double snr_db) {
  if (std::isinf(snr_db)) return snr_db > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  const double snr = std::pow(10.0, snr_db / 10.0);
  // Unit signal current and unit bit rate; only their ratio to N0 matters.
  const double signal = 1.0;
  const double bit_rate = 1.0;
  const double n0 = signal * signal / (snr * bandwidth(scheme, bit_rate));
  return ber_argument(scheme, signal, bit_rate, n0);
}

double analytic_ber_at_snr(const OppmScheme& scheme, double snr_db) {
  return q_function(decision_argument(scheme, snr_db));
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ b);
}

namespace {

void wilson(BerEstimate& e) {
  if (e.bits == 0) {
    e.ci_low = 0.0;
    e.ci_high = 1.0;
    return;
  }
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(e.bits);
  const double p = e.ber;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  e.ci_low = std::max(0.0, std::min(p, centre - half));
  e.ci_high = std::min(1.0, std::max(p, centre + half));
}

}  // namespace

BerEstimate simulate_ber(const OppmScheme& scheme, double snr_db, const McConfig& mc,
                         std::uint64_t stream) {
  BerEstimate out;
  out.snr_db = snr_db;
  out.analytic = analytic_ber_at_snr(scheme, snr_db);

  const double x = decision_argument(scheme, snr_db);
  double amplitude = std::numbers::sqrt2 * x;
  double sigma = 1.0;
  if (std::isinf(x)) {
    amplitude = 1.0;
    sigma = 0.0;
  }

  const int n = scheme.chips();
  const int w = scheme.weight();
  const int b = scheme.bits_per_symbol();
  const int labeled = scheme.labeled_symbols();

  std::mt19937_64 rng(stream_seed(mc.seed, stream, 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> samples(static_cast<std::size_t>(n));

  std::uint64_t errors = 0;
  std::uint64_t symbols = 0;
  while (symbols < mc.max_symbols && errors < mc.target_errors) {
    const auto sent = static_cast<int>(rng() >> (64 - b));
    for (int k = 0; k < n; ++k) {
      const double on = (k >= sent && k < sent + w) ? amplitude : 0.0;
      samples[static_cast<std::size_t>(k)] = on + sigma * gauss(rng);
    }
    const int got = decode_hard(scheme, samples, labeled);
    errors += static_cast<std::uint64_t>(
        std::popcount(gray_encode(static_cast<std::uint32_t>(sent)) ^
                      gray_encode(static_cast<std::uint32_t>(got))));
    ++symbols;
  }
  out.symbols = symbols;
  out.bits = symbols * static_cast<std::uint64_t>(b);
  out.errors = errors;
  out.ber = out.bits ? static_cast<double>(errors) / static_cast<double>(out.bits) : 0.0;
  wilson(out);
  return out;
}

std::vector<BerCurve> ber_sweep(const McConfig& mc) {
  std::vector<BerCurve> curves;
  std::vector<OppmScheme> schemes;
  for (const auto& [n, w] : mc.schemes) {
    schemes.push_back(OppmScheme::make(n, w));
    BerCurve c;
    c.chips = n;
    c.weight = w;
    c.points.resize(mc.snr_grid_db.size());
    curves.push_back(std::move(c));
  }
  const std::size_t per = mc.snr_grid_db.size();
  parallel_for(schemes.size() * per, mc.threads, [&](std::size_t cell) {
    const std::size_t s = cell / per;
    const std::size_t k = cell % per;
    curves[s].points[k] = simulate_ber(schemes[s], mc.snr_grid_db[k], mc,
                                       stream_seed(mc.seed, s + 1, k + 1));
  });
  return curves;
}

CodeLengthDecision min_code_length(double perceived_percent, std::span<const int> candidates,
                                   double channel_snr_db, double threshold, const McConfig& mc) {
  if (!(threshold > 0.0 && threshold < 0.5)) throw DomainError("threshold must lie in (0, 0.5)");
  if (!std::is_sorted(candidates.begin(), candidates.end())) {
    throw DomainError("candidate code lengths must be sorted ascending");
  }
  CodeLengthDecision d;
  d.perceived_percent = perceived_percent;
  d.channel_snr_db = channel_snr_db;
  d.threshold = threshold;
  d.candidates.assign(candidates.begin(), candidates.end());
  d.candidate_ber.resize(candidates.size());
  for (int n : candidates) d.weights.push_back(weight_for_dimming(n, perceived_percent));

  parallel_for(candidates.size(), mc.threads, [&](std::size_t i) {
    const OppmScheme scheme = OppmScheme::make(d.candidates[i], d.weights[i]);
    d.candidate_ber[i] = simulate_ber(scheme, channel_snr_db, mc,
                                      stream_seed(mc.seed, static_cast<std::uint64_t>(d.candidates[i]),
                                                  static_cast<std::uint64_t>(d.weights[i])));
  });
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (d.candidate_ber[i].ber <= threshold) {
      d.chosen_chips = d.candidates[i];
      d.chosen_weight = d.weights[i];
      d.chosen_ber = d.candidate_ber[i].ber;
      break;
    }
  }
  return d;
}

}  // namespace vlc
