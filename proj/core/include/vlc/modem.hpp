#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vlc {

/// Overlapping PPM code: n chips per symbol, w consecutive "on" chips.
/// Symbol i is on for chips i .. i + w - 1, so the alphabet holds
/// L = n - w + 1 symbols. The first 2^b symbols, b = floor(log2 L), carry
/// Gray-coded b-bit labels; the rest are never transmitted.
class OppmScheme {
 public:
  /// Throws NoDataError for w == 0 or w == n and DomainError for w > n or
  /// n < 1.
  static OppmScheme make(int n, int w);

  int chips() const { return n_; }
  int weight() const { return w_; }
  int alphabet_size() const { return n_ - w_ + 1; }
  double duty_cycle() const { return static_cast<double>(w_) / n_; }
  double perceived_percent() const;
  int bits_per_symbol() const { return bits_; }
  int labeled_symbols() const { return 1 << bits_; }
  double log2_alphabet() const;

  /// Chip pattern of symbol `index` (0/1 values).
  std::vector<std::uint8_t> pattern(int index) const;
  /// Gray label of a labeled symbol.
  std::uint32_t label(int index) const;
  /// Symbol carrying `label`.
  int symbol_for_label(std::uint32_t label) const;
  /// Number of chip positions where two symbols differ.
  int distance(int a, int b) const;

  /// One n-tuple per line, e.g. "1100".
  std::string table_text() const;

 private:
  OppmScheme(int n, int w);
  int n_;
  int w_;
  int bits_;
};

std::uint32_t gray_encode(std::uint32_t v);
std::uint32_t gray_decode(std::uint32_t g);

/// w = round(n (perceived / 100)^2), clamped to [1, n - 1].
int weight_for_dimming(int n, double perceived_percent);

/// Occupied bandwidth (n / w) Rb / log2 L.
double bandwidth(const OppmScheme& scheme, double bit_rate);
/// Highest bit rate B * (w / n) * log2 L that fits bandwidth B.
double max_bit_rate(const OppmScheme& scheme, double bandwidth_hz);
/// Rb_max / B = (w / n) log2 L, bit/s/Hz.
double spectral_efficiency(const OppmScheme& scheme);

/// Maps b-bit groups (MSB first, one bit per byte) to symbol indices.
/// Throws DomainError if the length is not a multiple of b or a byte is
/// not 0/1.
std::vector<int> encode(const OppmScheme& scheme, std::span<const std::uint8_t> bits);
/// Inverse of encode for labeled symbol indices.
std::vector<std::uint8_t> symbols_to_bits(const OppmScheme& scheme, std::span<const int> symbols);

/// Hard maximum-likelihood decision from n matched-filter chip samples:
/// the window of w consecutive chips with the largest sum. `candidates`
/// limits the search to symbols 0 .. candidates - 1 (0 means all L).
/// Ties go to the lowest index.
int decode_hard(const OppmScheme& scheme, std::span<const double> chip_samples, int candidates = 0);

/// Per-symbol waveform parameters. With average power P the on-chip level is
/// P n / w and every symbol averages exactly P over its period.
struct ChipWaveformParams {
  double average_power = 0.0;   // W
  double symbol_period = 0.0;   // s
  double chip_amplitude = 0.0;  // W
  double chip_duration = 0.0;   // s
};

ChipWaveformParams waveform(const OppmScheme& scheme, double average_power, double symbol_period);

/// Dimming convention used by the luminaires: the chip level stays at the
/// LED's full-on output, so the emitted average is duty_cycle * full_on_power.
ChipWaveformParams dimmed_waveform(const OppmScheme& scheme, double full_on_power,
                                   double symbol_period);

/// Argument of the nearest-neighbour error estimate:
/// (P / w) sqrt(n log2 L / (2 Rb N0)).
double ber_argument(const OppmScheme& scheme, double power, double bit_rate, double n0);
/// Q(ber_argument(...)).
double analytic_ber(const OppmScheme& scheme, double power, double bit_rate, double n0);

/// Average power 2 w sqrt(N0 / (2 n T)) Q^-1(ber) needed to reach a target
/// error rate uncoded. Throws DomainError unless 0 < ber < 0.5.
double required_power_uncoded(const OppmScheme& scheme, double n0, double symbol_period,
                              double ber_target);

}  // namespace vlc
