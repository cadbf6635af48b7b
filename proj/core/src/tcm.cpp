#include "vlc/tcm.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "vlc/errors.hpp"
#include "vlc/noise.hpp"
#include "vlc/qfunc.hpp"

namespace vlc {

PartitionTree set_partition(const OppmScheme& scheme, int depth) {
  const int L = scheme.alphabet_size();
  if (depth < 0 || depth > 30 || (1 << depth) > L) {
    throw DomainError("partition depth must satisfy 2^depth <= alphabet size");
  }
  PartitionTree tree;
  tree.alphabet_size = L;
  tree.weight = scheme.weight();
  for (int s = 0; s <= depth; ++s) {
    PartitionLevel level;
    level.depth = s;
    const int count = 1 << s;
    level.subsets.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < L; ++i) level.subsets[static_cast<std::size_t>(i % count)].push_back(i);
    for (const auto& subset : level.subsets) {
      for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
          const int d = scheme.distance(subset[a], subset[b]);
          if (!level.min_distance || d < *level.min_distance) level.min_distance = d;
        }
      }
    }
    tree.levels.push_back(std::move(level));
  }
  return tree;
}

TcmScheme coded_parameters(int base_alphabet, double duty_cycle, int min_distance, int states) {
  if (base_alphabet < 2) throw DomainError("base alphabet must hold at least 2 symbols");
  if (!(duty_cycle > 0.0 && duty_cycle < 1.0)) throw DomainError("duty cycle must lie in (0, 1)");
  TcmScheme t;
  t.base_alphabet = base_alphabet;
  t.duty_cycle = duty_cycle;
  t.coded_alphabet = 2 * base_alphabet;
  t.exact_chips = (2.0 * base_alphabet - 1.0) / (1.0 - duty_cycle);
  t.chips = static_cast<int>(std::lround(t.exact_chips));
  t.weight = static_cast<int>(std::lround(duty_cycle * t.chips));
  t.states = states;
  t.min_distance = min_distance;

  std::ostringstream warn;
  if (std::abs(t.exact_chips - t.chips) > 1e-9 * t.exact_chips) {
    warn << "coded chip count " << t.exact_chips << " is not integral; rounded to " << t.chips;
  }
  if (t.chips - t.weight + 1 != t.coded_alphabet) {
    if (!warn.str().empty()) warn << "; ";
    warn << "rounded code (" << t.chips << ", " << t.weight << ") has "
         << t.chips - t.weight + 1 << " symbols instead of " << t.coded_alphabet;
  }
  if (!warn.str().empty()) t.warning = warn.str();
  return t;
}

TcmScheme coded_scheme(const OppmScheme& scheme, int states) {
  if (states < 1 || !std::has_single_bit(static_cast<unsigned>(states))) {
    throw DomainError("trellis state count must be a power of two");
  }
  TcmScheme t = coded_parameters(scheme.alphabet_size(), scheme.duty_cycle(), 2, states);
  const int depth = std::countr_zero(static_cast<unsigned>(states));
  const OppmScheme coded = OppmScheme::make(t.chips, t.weight);
  // The rounded code may hold fewer than 2L symbols; partition what exists.
  const PartitionTree tree = set_partition(coded, depth);
  const auto& d = tree.levels.back().min_distance;
  if (!d) throw DomainError("partition too deep: every subset is a single symbol");
  t.min_distance = *d;
  return t;
}

double required_power_tcm(const TcmScheme& tcm, double n0, double symbol_period, double ber_target) {
  if (!(ber_target > 0.0 && ber_target < 0.5)) throw DomainError("BER target must lie in (0, 0.5)");
  if (!(n0 > 0.0) || !(symbol_period > 0.0)) throw DomainError("N0 and T must be positive");
  if (tcm.min_distance <= 0) throw DomainError("d_c must be positive");
  return 2.0 * tcm.exact_weight() *
         std::sqrt(n0 / (tcm.min_distance * tcm.exact_chips * symbol_period)) *
         q_inverse(ber_target);
}

double coding_gain_db(int base_alphabet, double min_distance, bool exact) {
  if (base_alphabet < 2) throw DomainError("coding gain needs L >= 2");
  if (!(min_distance >= 2.0)) throw DomainError("coding gain needs d_c >= 2");
  if (!exact) return 10.0 * std::log10(std::sqrt(min_distance / 4.0));
  const double L = base_alphabet;
  const double ratio = (L - 1.0) / (2.0 * L - 1.0);
  return 10.0 * std::log10(ratio * std::sqrt(min_distance / 2.0 / ratio));
}

std::vector<PowerCurvePoint> power_vs_dimming_curve(const ScenarioConfig& config,
                                                    const ChannelSummary& channel, int chips,
                                                    std::span<const double> perceived_percent,
                                                    std::span<const int> min_distances,
                                                    double ber_target) {
  if (!(channel.los_gain > 0.0)) throw DomainError("no line-of-sight gain at the receiver");
  const auto to_dbm = [&](double signal_current) {
    const double received = signal_current / config.receiver.responsivity;
    const double transmitted = received / channel.los_gain;
    return 10.0 * std::log10(transmitted / 1e-3);
  };
  std::vector<PowerCurvePoint> out;
  for (double level : perceived_percent) {
    PowerCurvePoint p;
    p.perceived_percent = level;
    p.chips = chips;
    p.weight = weight_for_dimming(chips, level);
    const OppmScheme scheme = OppmScheme::make(chips, p.weight);
    const NoiseBudget b = noise_budget(config, DimmingLevel::from_perceived(level), scheme, channel);
    p.uncoded_dbm = to_dbm(required_power_uncoded(scheme, b.n0, b.symbol_period, ber_target));
    for (int dc : min_distances) {
      const TcmScheme t = coded_parameters(scheme.alphabet_size(), scheme.duty_cycle(), dc);
      p.tcm_dbm.push_back(to_dbm(required_power_tcm(t, b.n0, b.symbol_period, ber_target)));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace vlc
