#include "sios/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace sios {

namespace {

// FFTW plan creation/destruction mutates global planner state and is not
// thread-safe; execution of a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

PowerSpectrum power_spectrum(const TimeSeries& signal, Window window) {
  const std::size_t n = signal.samples.size();
  if (n < 2) throw std::invalid_argument("power_spectrum: need at least 2 samples");
  if (!(signal.sampling_rate_hz > 0.0))
    throw std::invalid_argument("power_spectrum: sampling_rate_hz must be positive");

  double mean = 0.0;
  for (double x : signal.samples) mean += x;
  mean /= static_cast<double>(n);

  std::vector<double> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = signal.samples[i] - mean;

  double window_sq_sum = static_cast<double>(n);
  if (window == Window::hann) {
    window_sq_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w =
          0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n)));
      buf[i] *= w;
      window_sq_sum += w * w;
    }
  }

  const std::size_t num_bins = n / 2 + 1;
  std::vector<std::complex<double>> transform(num_bins);

  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(),
                                reinterpret_cast<fftw_complex*>(transform.data()),
                                FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("power_spectrum: FFT planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  PowerSpectrum out;
  out.bin_spacing_hz = signal.sampling_rate_hz / static_cast<double>(n);
  out.frequency_hz.resize(num_bins);
  out.power.resize(num_bins);

  // Single-sided scaling: every bin except DC (and, for even n, Nyquist)
  // also represents its negative-frequency twin and is doubled.
  const double scale = 1.0 / (static_cast<double>(n) * window_sq_sum);
  const bool has_nyquist = (n % 2 == 0);
  for (std::size_t k = 0; k < num_bins; ++k) {
    out.frequency_hz[k] = static_cast<double>(k) * out.bin_spacing_hz;
    const double mag_sq = std::norm(transform[k]);
    const bool one_sided_only = k == 0 || (has_nyquist && k == num_bins - 1);
    out.power[k] = (one_sided_only ? 1.0 : 2.0) * mag_sq * scale;
  }
  return out;
}

std::vector<TimeSeries> split_segments(const TimeSeries& signal, std::size_t count) {
  if (count == 0) throw std::invalid_argument("split_segments: count must be positive");
  const std::size_t seg_len = signal.samples.size() / count;
  if (seg_len == 0)
    throw std::invalid_argument("split_segments: record shorter than segment count");

  std::vector<TimeSeries> out(count);
  for (std::size_t s = 0; s < count; ++s) {
    out[s].sampling_rate_hz = signal.sampling_rate_hz;
    const auto begin = signal.samples.begin() + static_cast<std::ptrdiff_t>(s * seg_len);
    out[s].samples.assign(begin, begin + static_cast<std::ptrdiff_t>(seg_len));
  }
  return out;
}

PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& spectra) {
  if (spectra.empty()) throw std::invalid_argument("average_spectra: no spectra");
  const std::size_t num_bins = spectra.front().size();
  const double spacing = spectra.front().bin_spacing_hz;
  for (const auto& s : spectra) {
    if (s.size() != num_bins)
      throw std::invalid_argument("average_spectra: spectra differ in length");
    if (!(std::abs(s.bin_spacing_hz - spacing) <= 1e-9 * spacing))
      throw std::invalid_argument("average_spectra: spectra differ in resolution");
  }

  PowerSpectrum out = spectra.front();
  for (std::size_t i = 1; i < spectra.size(); ++i)
    for (std::size_t k = 0; k < num_bins; ++k) out.power[k] += spectra[i].power[k];
  const double inv = 1.0 / static_cast<double>(spectra.size());
  for (std::size_t k = 0; k < num_bins; ++k) out.power[k] *= inv;
  return out;
}

}  // namespace sios
