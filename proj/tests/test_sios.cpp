#include "sios/sios.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "sios/peaksearch.hpp"
#include "sios/reference.hpp"
#include "sios/types.hpp"

namespace {

// Spectrum of zeros with the given (bin, power) spikes; frequencies follow
// k * bin_spacing.
sios::PowerSpectrum spike_spectrum(std::size_t bins, double bin_spacing,
                                   const std::vector<std::pair<std::size_t, double>>& spikes) {
  sios::PowerSpectrum s;
  s.bin_spacing_hz = bin_spacing;
  s.frequency_hz.resize(bins);
  s.power.assign(bins, 0.0);
  for (std::size_t k = 0; k < bins; ++k)
    s.frequency_hz[k] = static_cast<double>(k) * bin_spacing;
  for (const auto& [bin, p] : spikes) s.power[bin] = p;
  return s;
}

sios::PeakSet peaks_at(std::size_t bins, const std::vector<std::size_t>& where) {
  sios::PeakSet p;
  p.num_bins = bins;
  p.indicator.assign(bins, 0);
  for (std::size_t k : where) {
    p.indicator[k] = 1;
    p.peak_indices.push_back(k);
  }
  return p;
}

}  // namespace

TEST_SUITE("sios") {

TEST_CASE("grid covers [low, high) with spacing bin_spacing / divisor") {
  const double ds = 12000.0 / 32768.0;
  const auto grid = sios::make_grid(100.0, 200.0, 10, ds);

  CHECK(grid.spacing_hz == doctest::Approx(ds / 10.0).epsilon(1e-15));
  CHECK(grid.size() == 2731);  // ceil(100 / 0.036621...)
  CHECK(grid.components.front() == 100.0);
  CHECK(grid.components.back() < 200.0);
  CHECK(grid.components.back() ==
        doctest::Approx(100.0 + 2730.0 * ds / 10.0).epsilon(1e-15));
}

TEST_CASE("grid endpoint handling when high is a whole number of steps") {
  // 0.5 Hz steps from 100 to 200: half-open excludes 200, inclusive keeps it.
  const auto half_open = sios::make_grid(100.0, 200.0, 1, 0.5);
  CHECK(half_open.size() == 200);
  CHECK(half_open.components.back() == doctest::Approx(199.5));

  const auto inclusive =
      sios::make_grid(100.0, 200.0, 1, 0.5, sios::GridEndpoint::inclusive);
  CHECK(inclusive.size() == 201);
  CHECK(inclusive.components.back() == doctest::Approx(200.0));

  // Degenerate one-step band.
  CHECK(sios::make_grid(100.0, 100.5, 1, 0.5).size() == 1);
  CHECK(sios::make_grid(100.0, 100.5, 1, 0.5, sios::GridEndpoint::inclusive).size() == 2);
}

TEST_CASE("grid argument validation") {
  CHECK_THROWS_AS(sios::make_grid(0.0, 200.0, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sios::make_grid(-5.0, 200.0, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sios::make_grid(200.0, 100.0, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sios::make_grid(100.0, 100.0, 10, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sios::make_grid(100.0, 200.0, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sios::make_grid(100.0, 200.0, 10, 0.0), std::invalid_argument);
}

TEST_CASE("resolution condition at the 12 kHz / 32768-sample operating point") {
  const double ds = 12000.0 / 32768.0;
  const auto rc = sios::check_resolution_condition(12000.0, 100.0, ds);

  CHECK(rc.pass);
  CHECK(rc.bound_hz == doctest::Approx(2.0 * 100.0 * 100.0 / 12000.0).epsilon(1e-15));
  CHECK(rc.bound_hz == doctest::Approx(1.667).epsilon(5e-4));
  CHECK(rc.margin == doctest::Approx(0.2197).epsilon(5e-4));
}

TEST_CASE("resolution condition fails for coarse spectra and at the boundary") {
  CHECK_FALSE(sios::check_resolution_condition(12000.0, 100.0, 2.0).pass);
  // Exactly at the bound: strict inequality, so it fails.
  const double bound = 2.0 * 100.0 * 100.0 / 12000.0;
  CHECK_FALSE(sios::check_resolution_condition(12000.0, 100.0, bound).pass);
  CHECK(sios::check_resolution_condition(12000.0, 100.0, bound * 0.999).pass);

  CHECK_THROWS_AS(sios::check_resolution_condition(0.0, 100.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(sios::check_resolution_condition(12000.0, 0.0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(sios::check_resolution_condition(12000.0, 100.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("projection lands on an exact divisor with zero residual") {
  const double ds = 12000.0 / 32768.0;
  const auto grid = sios::make_grid(100.0, 200.0, 10, ds);
  // 3 times the component at index 100; all values dyadic, so exact.
  const double g100 = grid.components[100];
  const auto proj = sios::project_peak(3.0 * g100, grid);

  REQUIRE(proj.has_value());
  CHECK(proj->component_index == 100);
  CHECK(proj->residual_hz == 0.0);
}

TEST_CASE("projection uses floor semantics, not nearest-component distance") {
  const double ds = 12000.0 / 32768.0;
  const auto grid = sios::make_grid(100.0, 200.0, 10, ds);

  // 110.02 Hz sits between components 273 (109.9976) and 274 (110.0342).
  // Component 274 is closer in plain distance, but floor(110.02 / 110.0342)
  // is zero harmonics, so the projection must treat the peak as the first
  // harmonic of the component just below it.
  const auto proj = sios::project_peak(110.02, grid);
  REQUIRE(proj.has_value());
  CHECK(proj->component_index == 273);
  CHECK(grid.components[273] == doctest::Approx(109.99755859375).epsilon(1e-12));
  CHECK(grid.components[274] > 110.02);
  CHECK(proj->residual_hz == doctest::Approx(110.02 - 109.99755859375).epsilon(1e-9));
  CHECK(proj->residual_hz < grid.spacing_hz);
}

TEST_CASE("projection rejects peaks with no near-integer multiple on the grid") {
  const double ds = 12000.0 / 32768.0;
  const auto grid = sios::make_grid(100.0, 200.0, 10, ds);

  // Below the grid start every order is zero.
  CHECK_FALSE(sios::project_peak(50.0, grid).has_value());
  CHECK_FALSE(sios::project_peak(99.9, grid).has_value());

  CHECK_THROWS_AS(sios::project_peak(0.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(sios::project_peak(-110.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(sios::project_peak(110.0, sios::FrequencyGrid{}),
                  std::invalid_argument);
}

TEST_CASE("projection residual at or above the grid spacing is rejected") {
  // Coarse 0.5 Hz grid on [100, 200): 250 Hz falls between order-2 multiples
  // of neighbouring components by more than one step.
  const auto grid = sios::make_grid(100.0, 200.0, 1, 0.5);
  // Closest miss: 2 * 124.5 = 249, 2 * 125 = 250 -> exact divisor exists.
  const auto exact = sios::project_peak(250.0, grid);
  REQUIRE(exact.has_value());
  CHECK(grid.components[exact->component_index] == doctest::Approx(125.0));

  // Shift the peak off every multiple: 250.25 has residual 0.25 at 125.0
  // (order 2), which is accepted; 250.75 is 0.75 from 250 and 0.25 below
  // 2 * 125.5 = 251 -> floor order still 2, residual 0.75 >= 0.5 everywhere.
  const auto rejected = sios::project_peak(250.75, grid);
  CHECK_FALSE(rejected.has_value());
}

TEST_CASE("projection tie goes to the lowest-frequency component") {
  const auto grid = sios::make_grid(100.0, 200.0, 1, 0.5);
  // 330 = 3 * 110 = 2 * 165; both on the grid with zero residual.
  const auto proj = sios::project_peak(330.0, grid);
  REQUIRE(proj.has_value());
  CHECK(grid.components[proj->component_index] == doctest::Approx(110.0));
  CHECK(proj->component_index == 20);
  CHECK(proj->residual_hz == 0.0);
}

TEST_CASE("worked example: three exact harmonics of 110 Hz on a 0.5 Hz grid") {
  // 24000 samples at 12 kHz -> 0.5 Hz bins; peaks at 110/220/330 Hz with
  // powers 4/2/1.
  const std::size_t bins = 12001;
  const auto spectrum =
      spike_spectrum(bins, 0.5, {{220, 4.0}, {440, 2.0}, {660, 1.0}});
  const auto peaks = sios::find_local_peaks(spectrum, {1, 0.0});
  REQUIRE(peaks.peak_indices == std::vector<std::size_t>{220, 440, 660});

  const auto grid = sios::make_grid(100.0, 200.0, 1, 0.5);

  SUBCASE("deduplicated counts each harmonic once") {
    const auto s = sios::construct_sios(peaks, spectrum, grid, 12000.0);
    REQUIRE(s.harmonic_count.size() == 200);
    CHECK(s.harmonic_count[20] == 3);   // component 110.0
    CHECK(s.harmonic_power[20] == doctest::Approx(7.0).epsilon(1e-12));
    // 165.0 also divides 330 Hz, so it counts that one peak as its second
    // harmonic.
    CHECK(s.harmonic_count[130] == 1);
    CHECK(s.harmonic_power[130] == doctest::Approx(1.0).epsilon(1e-12));
    // Components 109.5 and 164.5 sit exactly on the slippage boundary:
    // j*110/109.5 - j equals j/219 -- the window edge itself -- for every
    // order, and 330/164.5 - 2 equals 2/329 likewise.  The strict < of the
    // acceptance test excludes an edge hit in real arithmetic, but the two
    // sides round independently in floating point, so those two components
    // are left unpinned; everything else must stay empty.
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      if (i == 19 || i == 20 || i == 129 || i == 130) continue;
      CHECK(s.harmonic_count[i] == 0);
      CHECK(s.harmonic_power[i] == 0.0);
    }
    CHECK((s.harmonic_count[19] == 0) == (s.harmonic_power[19] == 0.0));
    CHECK((s.harmonic_count[129] == 0) == (s.harmonic_power[129] == 0.0));
  }

  SUBCASE("literal accumulation counts every candidate/peak event") {
    sios::SiosOptions opts;
    opts.deduplicate = false;
    const auto s = sios::construct_sios(peaks, spectrum, grid, 12000.0, opts);
    // Candidate 110 accepts 110/220/330, candidate 220 accepts 220,
    // candidate 330 accepts 330: five events, power 4+2+1 + 2 + 1.
    CHECK(s.harmonic_count[20] == 5);
    CHECK(s.harmonic_power[20] == doctest::Approx(10.0).epsilon(1e-12));
  }
}

TEST_CASE("no peaks means an all-zero structure") {
  const auto spectrum = spike_spectrum(4096, 0.5, {});
  const auto peaks = peaks_at(4096, {});
  const auto grid = sios::make_grid(100.0, 200.0, 2, 0.5);
  const auto s = sios::construct_sios(peaks, spectrum, grid, 4095.0);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    CHECK(s.harmonic_count[i] == 0);
    CHECK(s.harmonic_power[i] == 0.0);
  }
}

TEST_CASE("input validation") {
  const auto spectrum = spike_spectrum(256, 0.5, {});
  const auto grid = sios::make_grid(20.0, 40.0, 1, 0.5);

  auto mismatched = peaks_at(128, {});
  CHECK_THROWS_AS(sios::construct_sios(mismatched, spectrum, grid, 255.0),
                  std::invalid_argument);

  auto out_of_range = peaks_at(256, {});
  out_of_range.peak_indices.push_back(300);
  CHECK_THROWS_AS(sios::construct_sios(out_of_range, spectrum, grid, 255.0),
                  std::invalid_argument);

  const auto ok = peaks_at(256, {40});
  CHECK_THROWS_AS(sios::construct_sios(ok, spectrum, grid, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(sios::construct_sios(ok, spectrum, sios::FrequencyGrid{}, 255.0),
                  std::invalid_argument);
}

TEST_CASE("resolution enforcement refuses coarse spectra unless overridden") {
  // 2 Hz bins against a grid starting at 100 Hz with fs = 12 kHz:
  // 2 >= 2*100^2/12000 = 1.667, so the projection is ambiguous.
  const auto spectrum = spike_spectrum(512, 2.0, {{110, 1.0}});
  const auto peaks = peaks_at(512, {110});
  const auto grid = sios::make_grid(100.0, 200.0, 10, 2.0);

  CHECK_THROWS_AS(sios::construct_sios(peaks, spectrum, grid, 12000.0),
                  std::runtime_error);

  sios::SiosOptions opts;
  opts.enforce_resolution = false;
  CHECK_NOTHROW(sios::construct_sios(peaks, spectrum, grid, 12000.0, opts));
}

TEST_CASE("parallel construction matches the serial reference") {
  std::mt19937_64 rng(0xa5c3u);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = genutil::random_instance(rng, 2048, 256);
    CAPTURE(trial);

    for (bool dedup : {true, false}) {
      sios::SiosOptions opts;
      opts.deduplicate = dedup;
      const auto fast = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                             inst.sampling_rate_hz, opts);
      const auto slow = sios::reference::construct_sios(
          inst.peaks, inst.spectrum, inst.grid, inst.sampling_rate_hz, opts);

      REQUIRE(fast.harmonic_count.size() == slow.harmonic_count.size());
      for (std::size_t i = 0; i < fast.harmonic_count.size(); ++i) {
        CAPTURE(i);
        CHECK(fast.harmonic_count[i] == slow.harmonic_count[i]);
        const double scale = std::max(1.0, std::abs(slow.harmonic_power[i]));
        CHECK(std::abs(fast.harmonic_power[i] - slow.harmonic_power[i]) <=
              1e-12 * scale);
        // Counts and powers vanish together.
        CHECK((fast.harmonic_count[i] == 0) == (fast.harmonic_power[i] == 0.0));
      }
    }
  }
}

TEST_CASE("grid-aligned harmonic families are recovered completely") {
  std::mt19937_64 rng(0x715u);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = genutil::harmonic_instance(rng, /*aligned=*/true);
    CAPTURE(trial);
    const auto s = sios::construct_sios(h.instance.peaks, h.instance.spectrum,
                                        h.instance.grid, h.instance.sampling_rate_hz);
    REQUIRE(h.target_component < s.grid.size());
    CHECK(s.harmonic_count[h.target_component] ==
          static_cast<int>(h.harmonics));
    CHECK(s.harmonic_power[h.target_component] ==
          doctest::Approx(h.expected_power).epsilon(1e-12));
  }
}

TEST_CASE("a fundamental between grid components still keeps every harmonic") {
  // The slippage tolerance exists precisely so that a peak train whose base
  // frequency falls inside a grid step loses nothing to the rounding.
  std::mt19937_64 rng(0x2b6u);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = genutil::harmonic_instance(rng, /*aligned=*/false);
    CAPTURE(trial);
    const auto s = sios::construct_sios(h.instance.peaks, h.instance.spectrum,
                                        h.instance.grid, h.instance.sampling_rate_hz);
    REQUIRE(h.target_component < s.grid.size());
    CHECK(s.harmonic_count[h.target_component] ==
          static_cast<int>(h.harmonics));
    CHECK(s.harmonic_power[h.target_component] ==
          doctest::Approx(h.expected_power).epsilon(1e-12));
  }
}

TEST_CASE("adding a peak never decreases any count or power") {
  std::mt19937_64 rng(0x9dfu);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = genutil::random_instance(rng, 1024, 128);
    if (inst.peaks.peak_indices.empty()) continue;
    CAPTURE(trial);

    // Drop the median peak to form the smaller set.
    auto fewer = inst.peaks;
    const std::size_t drop = fewer.peak_indices[fewer.peak_indices.size() / 2];
    fewer.indicator[drop] = 0;
    fewer.peak_indices.erase(
        fewer.peak_indices.begin() +
        static_cast<std::ptrdiff_t>(fewer.peak_indices.size() / 2));

    for (bool dedup : {true, false}) {
      sios::SiosOptions opts;
      opts.deduplicate = dedup;
      const auto small = sios::construct_sios(fewer, inst.spectrum, inst.grid,
                                              inst.sampling_rate_hz, opts);
      const auto big = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                            inst.sampling_rate_hz, opts);
      for (std::size_t i = 0; i < big.harmonic_count.size(); ++i) {
        CAPTURE(i);
        CHECK(big.harmonic_count[i] >= small.harmonic_count[i]);
        CHECK(big.harmonic_power[i] >=
              small.harmonic_power[i] - 1e-12 * std::max(1.0, small.harmonic_power[i]));
      }
    }
  }
}

TEST_CASE("counts stay within the peak budget and N and E vanish together") {
  std::mt19937_64 rng(0x41eu);
  for (int trial = 0; trial < 10; ++trial) {
    auto inst = genutil::random_instance(rng, 2048, 256);
    CAPTURE(trial);
    const auto total_peaks = static_cast<int>(inst.peaks.peak_indices.size());
    for (bool dedup : {true, false}) {
      sios::SiosOptions opts;
      opts.deduplicate = dedup;
      const auto s = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                          inst.sampling_rate_hz, opts);
      for (std::size_t i = 0; i < s.harmonic_count.size(); ++i) {
        CAPTURE(i);
        // Deduplicated mode counts each peak at most once per component.
        if (dedup) CHECK(s.harmonic_count[i] <= total_peaks);
        CHECK((s.harmonic_count[i] == 0) == (s.harmonic_power[i] == 0.0));
      }
    }
  }
}

TEST_CASE("construction is deterministic across repeated runs") {
  std::mt19937_64 rng(0xc0deu);
  auto inst = genutil::random_instance(rng, 4096, 512);
  for (bool dedup : {true, false}) {
    sios::SiosOptions opts;
    opts.deduplicate = dedup;
    const auto a = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                        inst.sampling_rate_hz, opts);
    const auto b = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                        inst.sampling_rate_hz, opts);
    CHECK(a.harmonic_count == b.harmonic_count);
    // Bitwise: the merge sort fixes the accumulation order.
    REQUIRE(a.harmonic_power.size() == b.harmonic_power.size());
    for (std::size_t i = 0; i < a.harmonic_power.size(); ++i)
      CHECK(a.harmonic_power[i] == b.harmonic_power[i]);
  }
}

}  // TEST_SUITE
