#include "vlc/modem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "vlc/errors.hpp"
#include "vlc/qfunc.hpp"

namespace vlc {

std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t v = g;
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) v ^= v >> shift;
  return v;
}

OppmScheme::OppmScheme(int n, int w) : n_(n), w_(w) {
  bits_ = std::bit_width(static_cast<unsigned>(n - w + 1)) - 1;
}

OppmScheme OppmScheme::make(int n, int w) {
  if (n < 1) throw DomainError("OPPM code length must be at least 1");
  if (w < 0 || w > n) throw DomainError("OPPM weight must satisfy 0 <= w <= n");
  if (w == 0 || w == n) {
    throw NoDataError(w == 0 ? "weight 0 is full darkness and carries no data"
                             : "weight n is full brightness and carries no data");
  }
  if (n - w + 1 > (1 << 30)) throw DomainError("OPPM alphabet too large");
  return OppmScheme(n, w);
}

double OppmScheme::perceived_percent() const { return 100.0 * std::sqrt(duty_cycle()); }

double OppmScheme::log2_alphabet() const { return std::log2(static_cast<double>(alphabet_size())); }

std::vector<std::uint8_t> OppmScheme::pattern(int index) const {
  if (index < 0 || index >= alphabet_size()) throw DomainError("symbol index out of range");
  std::vector<std::uint8_t> chips(static_cast<std::size_t>(n_), 0);
  std::fill_n(chips.begin() + index, w_, std::uint8_t{1});
  return chips;
}

std::uint32_t OppmScheme::label(int index) const {
  if (index < 0 || index >= labeled_symbols()) throw DomainError("symbol carries no label");
  return gray_encode(static_cast<std::uint32_t>(index));
}

int OppmScheme::symbol_for_label(std::uint32_t label) const {
  if (label >= static_cast<std::uint32_t>(labeled_symbols())) throw DomainError("label out of range");
  return static_cast<int>(gray_decode(label));
}

int OppmScheme::distance(int a, int b) const {
  if (a < 0 || b < 0 || a >= alphabet_size() || b >= alphabet_size()) {
    throw DomainError("symbol index out of range");
  }
  return 2 * std::min(std::abs(a - b), w_);
}

std::string OppmScheme::table_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(alphabet_size()) * (n_ + 1));
  for (int i = 0; i < alphabet_size(); ++i) {
    for (std::uint8_t c : pattern(i)) out.push_back(c ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

int weight_for_dimming(int n, double perceived_percent) {
  if (n < 2) throw DomainError("code length must be at least 2 to dim");
  const double fraction = perceived_percent / 100.0;
  const long w = std::lround(n * fraction * fraction);
  return static_cast<int>(std::clamp<long>(w, 1, n - 1));
}

double bandwidth(const OppmScheme& scheme, double bit_rate) {
  return bit_rate / (scheme.duty_cycle() * scheme.log2_alphabet());
}

double max_bit_rate(const OppmScheme& scheme, double bandwidth_hz) {
  return bandwidth_hz * scheme.duty_cycle() * scheme.log2_alphabet();
}

double spectral_efficiency(const OppmScheme& scheme) {
  return scheme.duty_cycle() * scheme.log2_alphabet();
}

std::vector<int> encode(const OppmScheme& scheme, std::span<const std::uint8_t> bits) {
  const auto b = static_cast<std::size_t>(scheme.bits_per_symbol());
  if (bits.size() % b != 0) throw DomainError("bit count is not a multiple of bits per symbol");
  std::vector<int> out;
  out.reserve(bits.size() / b);
  for (std::size_t pos = 0; pos < bits.size(); pos += b) {
    std::uint32_t label = 0;
    for (std::size_t k = 0; k < b; ++k) {
      const std::uint8_t bit = bits[pos + k];
      if (bit > 1) throw DomainError("bits must be 0 or 1");
      label = (label << 1) | bit;
    }
    out.push_back(scheme.symbol_for_label(label));
  }
  return out;
}

std::vector<std::uint8_t> symbols_to_bits(const OppmScheme& scheme, std::span<const int> symbols) {
  const int b = scheme.bits_per_symbol();
  std::vector<std::uint8_t> out;
  out.reserve(symbols.size() * static_cast<std::size_t>(b));
  for (int s : symbols) {
    const std::uint32_t label = scheme.label(s);
    for (int k = b - 1; k >= 0; --k) out.push_back(static_cast<std::uint8_t>((label >> k) & 1u));
  }
  return out;
}

int decode_hard(const OppmScheme& scheme, std::span<const double> chip_samples, int candidates) {
  const int n = scheme.chips();
  const int w = scheme.weight();
  if (chip_samples.size() != static_cast<std::size_t>(n)) {
    throw DomainError("decode_hard expects exactly n chip samples");
  }
  const int limit = candidates <= 0 ? scheme.alphabet_size() : candidates;
  if (limit > scheme.alphabet_size()) throw DomainError("too many decoding candidates");

  double window = 0.0;
  for (int k = 0; k < w; ++k) window += chip_samples[static_cast<std::size_t>(k)];
  double best = window;
  int best_index = 0;
  for (int i = 1; i < limit; ++i) {
    window += chip_samples[static_cast<std::size_t>(i + w - 1)] - chip_samples[static_cast<std::size_t>(i - 1)];
    if (window > best) {
      best = window;
      best_index = i;
    }
  }
  return best_index;
}

ChipWaveformParams waveform(const OppmScheme& scheme, double average_power, double symbol_period) {
  ChipWaveformParams p;
  p.average_power = average_power;
  p.symbol_period = symbol_period;
  p.chip_amplitude = average_power / scheme.duty_cycle();
  p.chip_duration = symbol_period / scheme.chips();
  return p;
}

ChipWaveformParams dimmed_waveform(const OppmScheme& scheme, double full_on_power,
                                   double symbol_period) {
  return waveform(scheme, full_on_power * scheme.duty_cycle(), symbol_period);
}

double ber_argument(const OppmScheme& scheme, double power, double bit_rate, double n0) {
  if (!(bit_rate > 0.0) || !(n0 > 0.0) || power < 0.0) {
    throw DomainError("ber_argument requires P >= 0, Rb > 0 and N0 > 0");
  }
  return power / scheme.weight() *
         std::sqrt(scheme.chips() * scheme.log2_alphabet() / (2.0 * bit_rate * n0));
}

double analytic_ber(const OppmScheme& scheme, double power, double bit_rate, double n0) {
  return q_function(ber_argument(scheme, power, bit_rate, n0));
}

double required_power_uncoded(const OppmScheme& scheme, double n0, double symbol_period,
                              double ber_target) {
  if (!(ber_target > 0.0 && ber_target < 0.5)) throw DomainError("BER target must lie in (0, 0.5)");
  if (!(n0 > 0.0) || !(symbol_period > 0.0)) throw DomainError("N0 and T must be positive");
  return 2.0 * scheme.weight() * std::sqrt(n0 / (2.0 * scheme.chips() * symbol_period)) *
         q_inverse(ber_target);
}

}  // namespace vlc
