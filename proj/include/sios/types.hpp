#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sios {

/// A sampled vibration record (acceleration in arbitrary units).
struct TimeSeries {
  std::vector<double> samples;
  double sampling_rate_hz = 0.0;
};

/// Single-sided power amplitude spectrum. Bin k sits at frequency
/// k * bin_spacing_hz; the highest bin is at or below Nyquist.
struct PowerSpectrum {
  std::vector<double> frequency_hz;  // F(k) = k * bin_spacing_hz
  std::vector<double> power;         // P(k) >= 0
  double bin_spacing_hz = 0.0;       // sampling rate / number of time samples

  std::size_t size() const { return power.size(); }
};

/// Accepted local peaks of a spectrum. indicator[k] is 1 exactly when bin k
/// is a peak; peak_indices lists those bins ascending. num_bins records the
/// spectrum length the set was built from so downstream stages can reject
/// mismatched inputs.
struct PeakSet {
  std::vector<std::uint8_t> indicator;
  std::vector<std::size_t> peak_indices;
  std::size_t num_bins = 0;
};

/// Evenly spaced candidate-fundamental grid. components[i] = low_hz +
/// i * spacing_hz, with spacing_hz = spectrum resolution / resolution_divisor.
struct FrequencyGrid {
  double low_hz = 0.0;
  double high_hz = 0.0;
  int resolution_divisor = 1;
  double spacing_hz = 0.0;
  std::vector<double> components;

  std::size_t size() const { return components.size(); }
};

/// Structural information of a spectrum: per grid component, the number of
/// spectral peaks that project onto it as harmonics and their summed power.
struct Sios {
  FrequencyGrid grid;
  std::vector<int> harmonic_count;     // N(i)
  std::vector<double> harmonic_power;  // E(i)
};

}  // namespace sios
