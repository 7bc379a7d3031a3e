// Parallel kernels against their serial references. Run with
//   build/bench/sios_bench --benchmark_min_time=0.5s
// to compare; the parallel wins grow with spectrum size and thread count.

#include <cstddef>
#include <random>

#include <benchmark/benchmark.h>

#include "sios/peaksearch.hpp"
#include "sios/reference.hpp"
#include "sios/simulate.hpp"
#include "sios/sios.hpp"
#include "sios/spectrum.hpp"
#include "sios/types.hpp"

namespace {

// One noisy simulated record per spectrum size, shared across iterations.
const sios::PowerSpectrum& spectrum_of_size(std::size_t log2_samples) {
  static sios::PowerSpectrum cache[2];
  const std::size_t slot = log2_samples == 15 ? 0 : 1;
  if (cache[slot].size() == 0) {
    sios::SimulationParams sim;
    sim.num_samples = std::size_t{1} << log2_samples;
    sim.snr_db = -10.0;
    sim.rng_seed = 1234;
    cache[slot] = sios::power_spectrum(sios::simulate_bearing_signal(sim));
  }
  return cache[slot];
}

struct SiosInputs {
  sios::PowerSpectrum spectrum;
  sios::PeakSet peaks;
  sios::FrequencyGrid grid;
  double sampling_rate_hz = 0.0;
};

const SiosInputs& sios_inputs(std::size_t log2_samples) {
  static SiosInputs cache[2];
  const std::size_t slot = log2_samples == 15 ? 0 : 1;
  SiosInputs& in = cache[slot];
  if (in.spectrum.size() == 0) {
    in.spectrum = spectrum_of_size(log2_samples);
    in.sampling_rate_hz = 12000.0;
    const std::size_t l =
        sios::half_window_for_bandwidth(114.0, in.spectrum.bin_spacing_hz);
    const sios::OffsetTuning tuning = sios::tune_power_offset(in.spectrum, l);
    in.peaks = sios::find_local_peaks(
        in.spectrum, sios::PeakSearchConfig{l, tuning.power_offset});
    in.grid = sios::make_grid(100.0, 200.0, 10, in.spectrum.bin_spacing_hz);
  }
  return in;
}

void bm_peaks_parallel(benchmark::State& state) {
  const sios::PowerSpectrum& spectrum =
      spectrum_of_size(static_cast<std::size_t>(state.range(0)));
  const std::size_t l = sios::half_window_for_bandwidth(114.0, spectrum.bin_spacing_hz);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sios::find_local_peaks(spectrum, sios::PeakSearchConfig{l, 0.0002}));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(spectrum.size()));
}

void bm_peaks_serial(benchmark::State& state) {
  const sios::PowerSpectrum& spectrum =
      spectrum_of_size(static_cast<std::size_t>(state.range(0)));
  const std::size_t l = sios::half_window_for_bandwidth(114.0, spectrum.bin_spacing_hz);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sios::reference::find_local_peaks(spectrum, sios::PeakSearchConfig{l, 0.0002}));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(spectrum.size()));
}

void bm_sios_parallel(benchmark::State& state) {
  const SiosInputs& in = sios_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sios::construct_sios(in.peaks, in.spectrum, in.grid, in.sampling_rate_hz));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(in.peaks.peak_indices.size()));
}

void bm_sios_serial(benchmark::State& state) {
  const SiosInputs& in = sios_inputs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sios::reference::construct_sios(
        in.peaks, in.spectrum, in.grid, in.sampling_rate_hz));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(in.peaks.peak_indices.size()));
}

BENCHMARK(bm_peaks_parallel)->Arg(15)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_peaks_serial)->Arg(15)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sios_parallel)->Arg(15)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sios_serial)->Arg(15)->Arg(17)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
