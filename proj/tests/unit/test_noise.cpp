#include <doctest.h>

#include <cmath>

#include "vlc/channel.hpp"
#include "vlc/errors.hpp"
#include "vlc/noise.hpp"

using namespace vlc;

namespace {

const ChannelSummary& office_channel() {
  static const ChannelSummary s = analyze_channel(office_scenario());
  return s;
}

OppmScheme scheme_at(int n, double perceived) { return OppmScheme::make(n, weight_for_dimming(n, perceived)); }

}  // namespace

TEST_SUITE("noise") {
  TEST_CASE("pure signal shot noise") {
    ScenarioConfig c = office_scenario();
    c.receiver.ambient_current = 0.0;
    c.room.wall_reflectance = {0, 0, 0, 0};
    c.noise.thermal_psd_override = 0.0;
    const auto ch = analyze_channel(c);
    const auto s = scheme_at(32, 50);
    const auto b = noise_budget(c, DimmingLevel::from_perceived(50), s, ch);
    CHECK(b.sigma2_thermal == 0.0);
    CHECK(b.isi_term == 0.0);
    CHECK(b.total_variance ==
          doctest::Approx(2 * kElectronCharge * 0.28 * b.received_los_power * b.bandwidth).epsilon(1e-12));
    CHECK(b.n0 == doctest::Approx(2 * kElectronCharge * 0.28 * b.received_los_power).epsilon(1e-12));
  }

  TEST_CASE("budget composition") {
    const auto c = office_scenario();
    const auto s = scheme_at(32, 50);
    const auto b = noise_budget(c, DimmingLevel::from_perceived(50), s, office_channel());
    CHECK(b.sigma2_shot >= 0.0);
    CHECK(b.sigma2_thermal >= 0.0);
    CHECK(b.isi_term >= 0.0);
    CHECK(b.total_variance == b.sigma2_shot + b.sigma2_thermal + b.isi_term);
    CHECK(b.bandwidth == doctest::Approx(c.modulation_bandwidth).epsilon(1e-12));
    CHECK(b.signal_current == doctest::Approx(0.28 * b.received_los_power).epsilon(1e-15));
    CHECK(b.received_total_power >= b.received_los_power);
  }

  TEST_CASE("ambient current is linear in shot noise") {
    auto c = office_scenario();
    const auto s = scheme_at(32, 50);
    const auto dim = DimmingLevel::from_perceived(50);
    const auto a = noise_budget(c, dim, s, office_channel());
    c.receiver.ambient_current *= 2.0;
    const auto b = noise_budget(c, dim, s, office_channel());
    CHECK(b.sigma2_shot - a.sigma2_shot ==
          doctest::Approx(2 * kElectronCharge * 27e-3 * a.bandwidth).epsilon(1e-9));
  }

  TEST_CASE("thermal-limited link gains 6 dB when power doubles") {
    auto c = office_scenario();
    c.receiver.ambient_current = 0.0;
    c.noise.thermal_psd_override = 1e-12;
    c.noise.isi_model = IsiModel::kDelayed;
    const auto s = scheme_at(32, 50);
    const auto dim = DimmingLevel::from_perceived(50);
    const double a = snr_db(c, dim, s, office_channel());
    for (auto& f : c.fixtures) f.led_power *= 2.0;
    const double b = snr_db(c, dim, s, office_channel());
    CHECK(b - a == doctest::Approx(20 * std::log10(2.0)).epsilon(1e-3));
  }

  TEST_CASE("no LOS signal") {
    auto c = office_scenario();
    c.receiver.position = {0.05, 4.95, 2.9};
    const auto ch = analyze_channel(c);
    REQUIRE(ch.los_gain == 0.0);
    CHECK(std::isinf(snr_db(c, DimmingLevel::from_perceived(50), scheme_at(32, 50), ch)));
    CHECK(snr_db(c, DimmingLevel::from_perceived(50), scheme_at(32, 50), ch) < 0);
  }

  TEST_CASE("calibration") {
    auto c = office_scenario();
    const auto s = scheme_at(32, 50);
    const auto dim = DimmingLevel::from_perceived(50);
    CHECK(snr_db(c, dim, s, office_channel()) == doctest::Approx(-0.5).epsilon(1e-9));
    const double g = calibrate_thermal_conductance(c, dim, s, office_channel(), -0.5);
    CHECK(g == doctest::Approx(kOfficeThermalConductance).epsilon(1e-12));
    c.noise.thermal_conductance_s = calibrate_thermal_conductance(c, dim, s, office_channel(), 3.0);
    CHECK(snr_db(c, dim, s, office_channel()) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS_AS(calibrate_thermal_conductance(c, dim, s, office_channel(), 80.0), DomainError);
  }

  TEST_CASE("SNR rises with duty cycle") {
    const auto c = office_scenario();
    std::vector<double> levels;
    for (double p = 20; p <= 100; p += 5) levels.push_back(p);
    const auto curve = snr_curve(c, office_channel(), 64, levels);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].snr_db > curve[i - 1].snr_db);
  }

  TEST_CASE("DC-power ISI option counts all reflected power") {
    auto c = office_scenario();
    c.noise.isi_model = IsiModel::kDcPower;
    const auto s = scheme_at(32, 50);
    const auto b = noise_budget(c, DimmingLevel::from_perceived(50), s, office_channel());
    CHECK(b.received_isi_power == doctest::Approx(office_channel().nlos_gain * b.transmitted_power));
    c.noise.isi_model = IsiModel::kDelayed;
    const auto d = noise_budget(c, DimmingLevel::from_perceived(50), s, office_channel());
    CHECK(d.received_isi_power <= b.received_isi_power);
  }
}
