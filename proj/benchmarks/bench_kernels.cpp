#include <benchmark/benchmark.h>

#include <random>

#include "tidehaz/ccdf.hpp"
#include "tidehaz/hazard.hpp"
#include "tidehaz/sliding_max.hpp"
#include "test_support.hpp"

using namespace tidehaz;

namespace {

const TideRecord& year_record() {
  static const TideRecord rec = testing::mixed_tide(365.0);
  return rec;
}

void BM_SlidingMax(benchmark::State& state) {
  const auto x = year_record().levels();
  const auto window = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sliding_window_max(x, window));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_SlidingMax)->Arg(60)->Arg(720)->Arg(7200)->Unit(benchmark::kMillisecond);

void BM_PhiDt(benchmark::State& state) {
  const auto& rec = year_record();
  const auto bins = default_bins(rec);
  const Exec ex{static_cast<unsigned>(state.range(1))};
  for (auto _ : state)
    benchmark::DoNotOptimize(build_phi_dt(rec, static_cast<int>(state.range(0)), bins, ex));
}
BENCHMARK(BM_PhiDt)->Args({60, 1})->Args({720, 1})->Args({720, 0})->Unit(benchmark::kMillisecond);

void BM_PhiPatternAASZe02(benchmark::State& state) {
  const auto& rec = year_record();
  const auto p = aasze02_pattern();
  const auto bins = default_bins(rec, p.max_offset());
  for (auto _ : state) benchmark::DoNotOptimize(build_phi_pattern(rec, p, bins, {1}));
}
BENCHMARK(BM_PhiPatternAASZe02)->Unit(benchmark::kMillisecond);

void BM_PhiPatternProxy(benchmark::State& state) {
  const auto& rec = year_record();
  const auto p = extract_pattern(proxy_pattern(3.92));
  const auto bins = default_bins(rec, p.max_offset());
  for (auto _ : state) benchmark::DoNotOptimize(build_phi_pattern(rec, p, bins, {1}));
}
BENCHMARK(BM_PhiPatternProxy)->Unit(benchmark::kMillisecond);

void BM_PhiGDirect(benchmark::State& state) {
  const auto& rec = year_record();
  const auto bins = default_bins(rec);
  const GMethodParams gp;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_phi_g_direct(rec, static_cast<double>(state.range(0)) / 100.0,
                                                gp, bins, {1}));
}
BENCHMARK(BM_PhiGDirect)->Arg(392)->Arg(1418)->Unit(benchmark::kMillisecond);

void BM_HazardGrid(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  ResponseConfig cfg;
  cfg.domain = {-1.83, 1.50};
  std::vector<StageResponse> responses;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const double z0 = u(rng);
    responses.push_back(build_response({}, {{-1.13, z0}, {0.0, z0 + u(rng)}, {0.97, z0 + 3.0}}, cfg));
  }
  const auto phi = tabulate_erf({0.45, 0.34}, BinSpec::covering(-1.83, 1.50, 0.01));
  const auto levels = ExceedanceLevels::standard();
  for (auto _ : state)
    benchmark::DoNotOptimize(hazard_grid(responses, phi, levels, PsiMode::interval_sum, {1}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HazardGrid)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
