#include "sios/peaksearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sios {

namespace {

void validate_config(const PeakSearchConfig& config) {
  if (config.half_window_bins < 1)
    throw std::invalid_argument("peaksearch: half_window_bins must be at least 1");
  if (!(config.power_offset >= 0.0))
    throw std::invalid_argument("peaksearch: power_offset must be non-negative");
}

// Summed in ascending bin order; moving_average_threshold and
// find_local_peaks must agree bit-for-bit, so both call this.
double windowed_mean(const PowerSpectrum& spectrum, std::size_t half_window,
                     std::size_t bin) {
  double sum = 0.0;
  for (std::size_t i = bin - half_window; i <= bin + half_window; ++i)
    sum += spectrum.power[i];
  return sum / static_cast<double>(2 * half_window + 1);
}

}  // namespace

std::size_t half_window_for_bandwidth(double bandwidth_hz, double bin_spacing_hz) {
  if (!(bandwidth_hz > 0.0))
    throw std::invalid_argument("peaksearch: bandwidth_hz must be positive");
  if (!(bin_spacing_hz > 0.0))
    throw std::invalid_argument("peaksearch: bin_spacing_hz must be positive");
  const double half = std::round(0.5 * bandwidth_hz / bin_spacing_hz);
  return half < 1.0 ? 1 : static_cast<std::size_t>(half);
}

double moving_average_threshold(const PowerSpectrum& spectrum,
                                const PeakSearchConfig& config, std::size_t bin) {
  validate_config(config);
  const std::size_t l = config.half_window_bins;
  if (bin < l || bin + l >= spectrum.size())
    throw std::out_of_range("peaksearch: window around bin " + std::to_string(bin) +
                            " does not fit in the spectrum");
  return windowed_mean(spectrum, l, bin) + config.power_offset;
}

PeakSet find_local_peaks(const PowerSpectrum& spectrum, const PeakSearchConfig& config) {
  validate_config(config);
  const std::size_t l = config.half_window_bins;
  const std::size_t n = spectrum.size();
  if (n < 2 * l + 3)
    throw std::invalid_argument("peaksearch: spectrum has " + std::to_string(n) +
                                " bins, need at least 2l+3 = " +
                                std::to_string(2 * l + 3));

  PeakSet out;
  out.num_bins = n;
  out.indicator.assign(n, 0);

  const auto first = static_cast<std::ptrdiff_t>(l);
  const auto last = static_cast<std::ptrdiff_t>(n - l - 1);  // inclusive
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = first; k <= last; ++k) {
    const auto bin = static_cast<std::size_t>(k);
    const double p = spectrum.power[bin];
    if (!(p > spectrum.power[bin - 1] && p > spectrum.power[bin + 1])) continue;
    const double threshold = windowed_mean(spectrum, l, bin) + config.power_offset;
    if (p > threshold) out.indicator[bin] = 1;
  }

  for (std::size_t k = 0; k < n; ++k)
    if (out.indicator[k]) out.peak_indices.push_back(k);
  return out;
}

double peak_fraction(const PeakSet& peaks) {
  if (peaks.num_bins == 0)
    throw std::invalid_argument("peak_fraction: empty peak set");
  return static_cast<double>(peaks.peak_indices.size()) /
         static_cast<double>(peaks.num_bins);
}

OffsetTuning tune_power_offset(const PowerSpectrum& spectrum,
                               std::size_t half_window_bins, double fraction_lo,
                               double fraction_hi) {
  if (!(fraction_lo >= 0.0 && fraction_lo <= fraction_hi))
    throw std::invalid_argument("tune_power_offset: need 0 <= fraction_lo <= fraction_hi");

  const auto fraction_at = [&](double offset) {
    return peak_fraction(
        find_local_peaks(spectrum, PeakSearchConfig{half_window_bins, offset}));
  };

  OffsetTuning best{0.0, fraction_at(0.0)};
  if (best.fraction <= fraction_hi) return best;  // offset 0 is the floor

  double lo = 0.0;  // fraction here is known to be above the band
  double hi = *std::max_element(spectrum.power.begin(), spectrum.power.end()) + 1.0;
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = fraction_at(mid);
    if (f > fraction_hi) {
      lo = mid;
    } else if (f < fraction_lo) {
      hi = mid;
    } else {
      return {mid, f};
    }
  }
  // The fraction stepped over the band; settle on the low-offset side
  // (too many peaks rather than too few).
  return {lo, fraction_at(lo)};
}

}  // namespace sios
