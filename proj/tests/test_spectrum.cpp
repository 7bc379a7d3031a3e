#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "sios/reference.hpp"
#include "sios/simulate.hpp"
#include "sios/spectrum.hpp"

using sios::PowerSpectrum;
using sios::TimeSeries;

namespace {

TimeSeries tone(double amplitude, double freq_hz, double fs, std::size_t n,
                double dc = 0.0) {
  TimeSeries out;
  out.sampling_rate_hz = fs;
  out.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.samples[k] = dc + amplitude * std::sin(2.0 * std::numbers::pi * freq_hz *
                                               static_cast<double>(k) / fs);
  return out;
}

TimeSeries white_noise(std::size_t n, double fs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TimeSeries out;
  out.sampling_rate_hz = fs;
  out.samples.resize(n);
  for (double& x : out.samples)
    x = (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 0.5;
  return out;
}

double mean_square_demeaned(const TimeSeries& t) {
  double mean = 0.0;
  for (double x : t.samples) mean += x;
  mean /= static_cast<double>(t.samples.size());
  double sum = 0.0;
  for (double x : t.samples) sum += (x - mean) * (x - mean);
  return sum / static_cast<double>(t.samples.size());
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("resolution is sampling rate over record length") {
  const TimeSeries x = tone(1.0, 440.0, 12000.0, std::size_t{1} << 15);
  const PowerSpectrum s = sios::power_spectrum(x);
  CHECK(s.bin_spacing_hz == 12000.0 / 32768.0);
  CHECK(std::abs(s.bin_spacing_hz - 0.3662) < 5e-5);  // 4 significant figures
  CHECK(s.size() == (std::size_t{1} << 14) + 1);
  CHECK(s.frequency_hz[100] == doctest::Approx(100.0 * s.bin_spacing_hz));
}

TEST_CASE("a bin-aligned unit sinusoid concentrates power 0.5 in its bin") {
  const double fs = 8192.0;
  const std::size_t n = 8192;  // 1 Hz bins
  const TimeSeries x = tone(1.0, 1000.0, fs, n);
  const PowerSpectrum s = sios::power_spectrum(x);
  CHECK(s.power[1000] == doctest::Approx(0.5).epsilon(1e-9));
  for (std::size_t k : {std::size_t{990}, std::size_t{998}, std::size_t{1002},
                        std::size_t{1500}})
    CHECK(s.power[k] < 1e-9 * s.power[1000]);
}

TEST_CASE("two tones keep their power ratio and match the direct DFT") {
  const double fs = 4096.0;
  const std::size_t n = 4096;
  TimeSeries x = tone(2.0, 300.0, fs, n);
  const TimeSeries second = tone(0.5, 700.0, fs, n);
  for (std::size_t k = 0; k < n; ++k) x.samples[k] += second.samples[k];

  const PowerSpectrum s = sios::power_spectrum(x);
  CHECK(s.power[300] / s.power[700] == doctest::Approx(16.0).epsilon(1e-9));

  // FFT path against the O(n) single-bin oracle.
  for (std::size_t bin : {std::size_t{300}, std::size_t{700}, std::size_t{55}}) {
    const double direct = sios::reference::dft_power_at(x, bin);
    const double via_fft = s.power[bin];
    CHECK(via_fft == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("bins sum to the mean square of the de-meaned input") {
  const TimeSeries x = white_noise(5000, 1000.0, 99);
  const PowerSpectrum s = sios::power_spectrum(x);
  double total = 0.0;
  for (double p : s.power) total += p;
  CHECK(total == doctest::Approx(mean_square_demeaned(x)).epsilon(1e-6));
}

TEST_CASE("constant offset does not leak out of the DC bin") {
  const TimeSeries x = tone(1.0, 100.0, 4096.0, 4096, /*dc=*/7.5);
  const PowerSpectrum s = sios::power_spectrum(x);
  CHECK(s.power[0] < 1e-18);
  CHECK(s.power[100] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("hann window keeps a bin-aligned tone's total power") {
  const double fs = 4096.0;
  const TimeSeries x = tone(1.0, 1000.0, fs, 4096);
  const PowerSpectrum s = sios::power_spectrum(x, sios::Window::hann);
  // The periodic hann spreads the line over three bins whose powers add
  // back to the tone's mean square.
  const double sum = s.power[999] + s.power[1000] + s.power[1001];
  CHECK(sum == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(s.power[1000] == doctest::Approx(0.5 * 2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("deterministic: the same record transforms identically twice") {
  const TimeSeries x = white_noise(4096, 2000.0, 5);
  const PowerSpectrum a = sios::power_spectrum(x);
  const PowerSpectrum b = sios::power_spectrum(x);
  CHECK(a.power == b.power);
}

TEST_CASE("split_segments partitions in order and drops the remainder") {
  TimeSeries x;
  x.sampling_rate_hz = 10.0;
  for (int i = 0; i < 10; ++i) x.samples.push_back(i);
  const auto segments = sios::split_segments(x, 3);
  REQUIRE(segments.size() == 3);
  CHECK(segments[0].samples == std::vector<double>{0, 1, 2});
  CHECK(segments[1].samples == std::vector<double>{3, 4, 5});
  CHECK(segments[2].samples == std::vector<double>{6, 7, 8});  // 9 dropped
  CHECK(segments[1].sampling_rate_hz == 10.0);
  CHECK_THROWS_AS(sios::split_segments(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(sios::split_segments(x, 11), std::invalid_argument);
}

TEST_CASE("average_spectra is the bin-wise mean") {
  const TimeSeries x = white_noise(1024, 1000.0, 17);
  PowerSpectrum a = sios::power_spectrum(x);
  PowerSpectrum b = a;
  for (double& p : b.power) p *= 3.0;
  const PowerSpectrum avg = sios::average_spectra({a, b});
  for (std::size_t k = 0; k < avg.size(); ++k)
    CHECK(avg.power[k] == doctest::Approx(2.0 * a.power[k]).epsilon(1e-12));

  CHECK(sios::average_spectra({a}).power == a.power);

  PowerSpectrum shorter = a;
  shorter.power.pop_back();
  shorter.frequency_hz.pop_back();
  CHECK_THROWS_AS(sios::average_spectra({a, shorter}), std::invalid_argument);
  CHECK_THROWS_AS(sios::average_spectra({}), std::invalid_argument);
}

TEST_CASE("averaging K segments cuts the noise-bin variance about K-fold") {
  // One long noise record; its 8-segment averaged spectrum should show
  // roughly an eighth of the bin-to-bin variance of a single segment.
  const std::size_t segment_len = 2048;
  const TimeSeries x = white_noise(8 * segment_len, 1000.0, 1234);
  const auto segments = sios::split_segments(x, 8);

  std::vector<PowerSpectrum> spectra;
  for (const TimeSeries& segment : segments)
    spectra.push_back(sios::power_spectrum(segment));
  const PowerSpectrum averaged = sios::average_spectra(spectra);

  const auto interior_variance = [](const PowerSpectrum& s) {
    double mean = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 1; k + 1 < s.size(); ++k, ++count) mean += s.power[k];
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t k = 1; k + 1 < s.size(); ++k)
      var += (s.power[k] - mean) * (s.power[k] - mean);
    return var / static_cast<double>(count);
  };

  const double ratio = interior_variance(spectra.front()) / interior_variance(averaged);
  CHECK(ratio > 5.5);
  CHECK(ratio < 11.0);
}

TEST_CASE("input validation") {
  TimeSeries bad;
  bad.sampling_rate_hz = 0.0;
  bad.samples = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS(sios::power_spectrum(bad), std::invalid_argument);
  bad.sampling_rate_hz = 100.0;
  bad.samples = {1.0};
  CHECK_THROWS_AS(sios::power_spectrum(bad), std::invalid_argument);
}

}  // TEST_SUITE
