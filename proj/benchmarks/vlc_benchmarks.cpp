#include <benchmark/benchmark.h>

#include <random>

#include "vlc/channel.hpp"
#include "vlc/mc.hpp"
#include "vlc/modem.hpp"
#include "vlc/photometry.hpp"

namespace {

void BM_ChannelModelBuild(benchmark::State& state) {
  auto config = vlc::office_scenario();
  config.room.mesh_resolution = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    vlc::ChannelModel model(config, 1);
    benchmark::DoNotOptimize(model.element_count());
  }
}
BENCHMARK(BM_ChannelModelBuild)->Arg(20)->Arg(10)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ChannelQuery(benchmark::State& state) {
  const vlc::ChannelModel model(vlc::office_scenario(), 1);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.analyze({x, 1.0, 0.85}));
    x = x > 4.0 ? 0.5 : x + 0.1;
  }
}
BENCHMARK(BM_ChannelQuery)->Unit(benchmark::kMicrosecond);

void BM_IlluminanceMap(benchmark::State& state) {
  const auto config = vlc::office_scenario();
  const auto dim = vlc::DimmingLevel::from_perceived(70.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vlc::illuminance_map(config, 0.85, dim, 0.1, 1));
  }
}
BENCHMARK(BM_IlluminanceMap)->Unit(benchmark::kMillisecond);

void BM_DecodeHard(benchmark::State& state) {
  const auto scheme = vlc::OppmScheme::make(static_cast<int>(state.range(0)),
                                            static_cast<int>(state.range(0) / 4));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> y(static_cast<std::size_t>(scheme.chips()));
  for (auto& v : y) v = g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(vlc::decode_hard(scheme, y, scheme.labeled_symbols()));
}
BENCHMARK(BM_DecodeHard)->Arg(8)->Arg(32)->Arg(128);

// Monte Carlo throughput in symbols per second.
void BM_SimulateBer(benchmark::State& state) {
  const auto scheme = vlc::OppmScheme::make(static_cast<int>(state.range(0)),
                                            static_cast<int>(state.range(0) / 4));
  vlc::McConfig mc;
  mc.max_symbols = 100000;
  mc.target_errors = ~0ull;
  std::uint64_t symbols = 0;
  for (auto _ : state) symbols += vlc::simulate_ber(scheme, 6.0, mc).symbols;
  state.counters["symbols/s"] = benchmark::Counter(static_cast<double>(symbols), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SimulateBer)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
