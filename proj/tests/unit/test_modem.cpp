#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vlc/errors.hpp"
#include "vlc/modem.hpp"
#include "vlc/qfunc.hpp"

using namespace vlc;

TEST_SUITE("modem") {
  TEST_CASE("symbol tables") {
    const auto s = OppmScheme::make(4, 2);
    CHECK(s.alphabet_size() == 3);
    CHECK(s.table_text() == "1100\n0110\n0011\n");
    CHECK(OppmScheme::make(16, 8).alphabet_size() == 9);
    CHECK(OppmScheme::make(16, 8).duty_cycle() == 0.5);
    CHECK(OppmScheme::make(32, 8).duty_cycle() == 0.25);
    CHECK(OppmScheme::make(32, 8).perceived_percent() == doctest::Approx(50.0));
    CHECK(OppmScheme::make(16, 8).bits_per_symbol() == 3);
    CHECK(OppmScheme::make(16, 8).labeled_symbols() == 8);
  }

  TEST_CASE("degenerate weights") {
    CHECK_THROWS_AS(OppmScheme::make(8, 0), NoDataError);
    CHECK_THROWS_AS(OppmScheme::make(8, 8), NoDataError);
    CHECK_THROWS_AS(OppmScheme::make(8, 9), DomainError);
    CHECK_THROWS_AS(OppmScheme::make(0, 0), DomainError);
  }

  TEST_CASE("distance law by brute force") {
    for (int n = 2; n <= 64; ++n) {
      for (int w = 1; w < n; ++w) {
        const auto s = OppmScheme::make(n, w);
        const int L = s.alphabet_size();
        for (int a = 0; a < L; a += (L > 20 ? 3 : 1)) {
          for (int b = 0; b < L; ++b) CHECK_EQ(s.distance(a, b), oracle::hamming(a, b, w));
        }
      }
    }
    const auto s = OppmScheme::make(16, 8);
    for (int i = 0; i < 9; ++i) {
      const auto pat = s.pattern(i);
      int ones = 0;
      for (auto c : pat) ones += c;
      CHECK(ones == 8);
      for (int k = 0; k < 16; ++k) CHECK(pat[k] == ((oracle::mask(i, 8) >> k) & 1u));
    }
  }

  TEST_CASE("Gray labels") {
    for (std::uint32_t v = 0; v < 4096; ++v) {
      CHECK(gray_decode(gray_encode(v)) == v);
      CHECK(std::popcount(gray_encode(v) ^ gray_encode(v + 1)) == 1);
    }
    const auto s = OppmScheme::make(32, 8);
    for (int i = 0; i < s.labeled_symbols(); ++i) CHECK(s.symbol_for_label(s.label(i)) == i);
    CHECK_THROWS_AS(s.label(s.labeled_symbols()), DomainError);
  }

  TEST_CASE("weights for dimming") {
    CHECK(weight_for_dimming(32, 50) == 8);
    CHECK(weight_for_dimming(128, 35) == 16);
    CHECK(weight_for_dimming(8, 86) == 6);
    CHECK(weight_for_dimming(8, 1) == 1);
    CHECK(weight_for_dimming(8, 100) == 7);
  }

  TEST_CASE("rate formulas") {
    const auto s = OppmScheme::make(16, 8);
    CHECK(max_bit_rate(s, 20e6) == doctest::Approx(20e6 * 0.5 * std::log2(9.0)).epsilon(1e-12));
    CHECK(max_bit_rate(s, 20e6) == doctest::Approx(31.7e6).epsilon(1e-3));
    CHECK(bandwidth(s, 10e6) == doctest::Approx(2 * 10e6 / std::log2(9.0)).epsilon(1e-12));
    CHECK(bandwidth(s, 10e6) == doctest::Approx(6.31e6).epsilon(1e-3));
    CHECK(spectral_efficiency(s) == doctest::Approx(0.5 * std::log2(9.0)).epsilon(1e-12));
    for (int n : {4, 9, 33, 128}) {
      for (int w = 1; w < n; w += 3) {
        const auto t = OppmScheme::make(n, w);
        for (double rb : {1e3, 7.7e6, 2.2e9}) {
          CHECK(max_bit_rate(t, bandwidth(t, rb)) == doctest::Approx(rb).epsilon(1e-14));
        }
      }
    }
  }

  TEST_CASE("encode and decode without noise") {
    const auto s = OppmScheme::make(32, 8);
    std::mt19937_64 rng(3);
    std::vector<std::uint8_t> bits(s.bits_per_symbol() * 200);
    for (auto& b : bits) b = rng() & 1u;
    const auto syms = encode(s, bits);
    CHECK(symbols_to_bits(s, syms) == bits);
    for (int sym : syms) {
      std::vector<double> y(32);
      for (int k = 0; k < 32; ++k) y[k] = (k >= sym && k < sym + 8) ? 1.0 : 0.0;
      CHECK(decode_hard(s, y) == sym);
    }
    std::vector<double> flat(32, 0.7);
    CHECK(decode_hard(s, flat) == 0);
    CHECK_THROWS_AS(encode(s, std::vector<std::uint8_t>{1, 0}), DomainError);
    CHECK_THROWS_AS(decode_hard(s, std::vector<double>(31)), DomainError);
  }

  TEST_CASE("decoder equals exhaustive correlation ML") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    std::uniform_int_distribution<int> small(-2, 2);
    for (int n = 2; n <= 16; ++n) {
      for (int w = 1; w < n; ++w) {
        const auto s = OppmScheme::make(n, w);
        for (int trial = 0; trial < 60; ++trial) {
          std::vector<double> y(n);
          // Integer samples make ties common and exercise the tie rule.
          const bool ties = trial % 2;
          for (auto& v : y) v = ties ? small(rng) : g(rng);
          CHECK_EQ(decode_hard(s, y), oracle::ml_decision(y, w, s.alphabet_size()));
          CHECK_EQ(decode_hard(s, y, s.labeled_symbols()), oracle::ml_decision(y, w, s.labeled_symbols()));
        }
      }
    }
  }

  TEST_CASE("waveforms") {
    const auto s = OppmScheme::make(16, 4);
    const auto wf = waveform(s, 2.0, 1e-6);
    CHECK(wf.chip_amplitude == doctest::Approx(8.0));
    CHECK(wf.chip_duration == doctest::Approx(1e-6 / 16));
    CHECK(wf.chip_amplitude * 4 * wf.chip_duration / 1e-6 == doctest::Approx(2.0));
    const auto dimmed = dimmed_waveform(s, 3.0, 1e-6);
    CHECK(dimmed.chip_amplitude == doctest::Approx(3.0));
    CHECK(dimmed.average_power == doctest::Approx(0.75));
  }

  TEST_CASE("analytic error rate") {
    const auto s = OppmScheme::make(32, 8);
    CHECK(analytic_ber(s, 0.0, 1e6, 1e-12) == 0.5);
    const double x = ber_argument(s, 2e-6, 1e6, 1e-18);
    CHECK(x == doctest::Approx(2e-6 / 8 * std::sqrt(32 * std::log2(25.0) / (2 * 1e6 * 1e-18))).epsilon(1e-12));

    double prev = 1.0;
    for (double p = 1e-7; p < 1e-5; p *= 1.5) {
      const double b = analytic_ber(s, p, 1e6, 1e-18);
      CHECK(b < prev);
      prev = b;
    }
    prev = 1.0;
    for (int n : {9, 12, 16, 24, 32, 64}) {
      const double b = analytic_ber(OppmScheme::make(n, 8), 1e-6, 1e6, 1e-18);
      CHECK(b < prev);
      prev = b;
    }

    const double T = 1e-6, n0 = 3e-19;
    for (double target : {1e-3, 1e-6, 1e-9}) {
      const double p = required_power_uncoded(s, n0, T, target);
      const double rb = s.log2_alphabet() / T;
      CHECK(analytic_ber(s, p, rb, n0) == doctest::Approx(target).epsilon(1e-9));
      CHECK(p == doctest::Approx(2 * 8 * std::sqrt(n0 / (2 * 32 * T)) * q_inverse(target)).epsilon(1e-12));
    }
    const double p8 = required_power_uncoded(OppmScheme::make(32, 8), n0, T, 1e-6);
    const double p16 = required_power_uncoded(OppmScheme::make(32, 16), n0, T, 1e-6);
    CHECK(p16 == doctest::Approx(2 * p8).epsilon(1e-12));
    CHECK_THROWS_AS(required_power_uncoded(s, n0, T, 0.6), DomainError);
  }
}
