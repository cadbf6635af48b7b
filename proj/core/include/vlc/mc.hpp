#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vlc/modem.hpp"

namespace vlc {

struct McConfig {
  std::uint64_t seed = 1;
  std::uint64_t max_symbols = 10'000'000;
  std::uint64_t target_errors = 100;  // stop a point once this many bit errors are seen
  std::vector<double> snr_grid_db;
  std::vector<std::pair<int, int>> schemes;  // (n, w)
  unsigned threads = 0;
};

/// Decision-statistic argument x for a channel SNR (dB). The SNR fixes N0
/// through S^2 / (N0 B) with B the scheme bandwidth, and x is then the
/// nearest-neighbour argument (P/w) sqrt(n log2 L / (2 Rb N0)); the bit
/// rate cancels, leaving x^2 = SNR n^2 / (2 w^3).
double decision_argument(const OppmScheme& scheme, double snr_db);

/// Q(decision_argument(scheme, snr_db)).
double analytic_ber_at_snr(const OppmScheme& scheme, double snr_db);

struct BerEstimate {
  double snr_db = 0.0;
  double ber = 0.0;
  double ci_low = 0.0;   // 95 % Wilson interval
  double ci_high = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  std::uint64_t symbols = 0;
  double analytic = 0.0;  // analytic_ber_at_snr at the same point
};

/// Seed for an independent stream: SplitMix64 of (seed, a, b).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

/// Chip-level Monte Carlo: uniform labeled symbols, on-chip amplitude
/// sqrt(2) x over unit-variance Gaussian noise per chip (so the pairwise
/// error between adjacent symbols is exactly Q(x)), ML window decision
/// restricted to the labeled symbols, Gray-label bit errors. `stream`
/// selects the RNG stream. snr_db may be +/- infinity.
BerEstimate simulate_ber(const OppmScheme& scheme, double snr_db, const McConfig& mc,
                         std::uint64_t stream = 0);

struct BerCurve {
  int chips = 0;
  int weight = 0;
  std::vector<BerEstimate> points;
};

/// Every (scheme, SNR) cell of mc, each on its own stream, in parallel.
/// Output is identical for any worker count.
std::vector<BerCurve> ber_sweep(const McConfig& mc);

struct CodeLengthDecision {
  double perceived_percent = 0.0;
  double channel_snr_db = 0.0;
  double threshold = 0.0;
  std::vector<int> candidates;
  std::vector<int> weights;
  std::vector<BerEstimate> candidate_ber;
  std::optional<int> chosen_chips;  // empty: no candidate meets the threshold
  std::optional<int> chosen_weight;
  std::optional<double> chosen_ber;
};

/// Smallest candidate n (ascending list) whose simulated BER at the channel
/// SNR is at or below `threshold`; w from weight_for_dimming.
CodeLengthDecision min_code_length(double perceived_percent, std::span<const int> candidates,
                                   double channel_snr_db, double threshold, const McConfig& mc);

}  // namespace vlc
