#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vlc/channel.hpp"
#include "vlc/modem.hpp"
#include "vlc/scenario.hpp"

namespace vlc {

struct PartitionLevel {
  int depth = 0;                          // 2^depth subsets
  std::vector<std::vector<int>> subsets;  // symbol indices, ascending
  /// Smallest chip distance between two symbols of the same subset; empty
  /// when every subset is a singleton.
  std::optional<int> min_distance;
};

struct PartitionTree {
  int alphabet_size = 0;
  int weight = 0;
  std::vector<PartitionLevel> levels;  // levels[s] for s = 0 .. depth
};

/// Ungerboeck-style partition: subset k at depth s holds the symbols whose
/// index is congruent to k modulo 2^s. Throws DomainError if depth < 0 or
/// 2^depth > L.
PartitionTree set_partition(const OppmScheme& scheme, int depth);

/// Parameters of the 2L-ary trellis-coded OPPM that keeps the duty cycle
/// and bandwidth of a base scheme.
struct TcmScheme {
  int base_alphabet = 0;      // L
  double duty_cycle = 0.0;    // w / n of the base scheme
  int coded_alphabet = 0;     // 2L
  double exact_chips = 0.0;   // (2L - 1) / (1 - duty)
  int chips = 0;              // n_c, rounded when exact_chips is not integral
  int weight = 0;             // w_c
  int states = 1;
  int min_distance = 2;       // d_c
  std::optional<std::string> warning;

  double exact_weight() const { return duty_cycle * exact_chips; }
};

/// Coded parameters for given L, duty cycle and intra-subset distance.
TcmScheme coded_parameters(int base_alphabet, double duty_cycle, int min_distance, int states = 1);

/// Coded scheme for `states` = 2^depth, with d_c taken from the set
/// partition of the coded alphabet at that depth.
TcmScheme coded_scheme(const OppmScheme& scheme, int states);

/// Average power 2 w_c sqrt(N0 / (d_c n_c T)) Q^-1(ber), evaluated with the
/// unrounded n_c and w_c = duty * n_c.
double required_power_tcm(const TcmScheme& tcm, double n0, double symbol_period, double ber_target);

/// Coding gain over uncoded OPPM in dB. Exact form:
/// 10 log10(((L-1)/(2L-1)) sqrt((d_c/2)(2L-1)/(L-1))); approximate form:
/// 10 log10(sqrt(d_c / 4)). Throws DomainError for L < 2 or d_c < 2.
double coding_gain_db(int base_alphabet, double min_distance, bool exact);

struct PowerCurvePoint {
  double perceived_percent = 0.0;
  int chips = 0;
  int weight = 0;
  double uncoded_dbm = 0.0;
  std::vector<double> tcm_dbm;  // one per requested d_c
};

/// Transmitted average optical power needed for `ber_target` at the
/// scenario receiver, per dimming level, uncoded and for each d_c.
std::vector<PowerCurvePoint> power_vs_dimming_curve(const ScenarioConfig& config,
                                                    const ChannelSummary& channel, int chips,
                                                    std::span<const double> perceived_percent,
                                                    std::span<const int> min_distances,
                                                    double ber_target);

}  // namespace vlc
