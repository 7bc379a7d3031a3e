#include "sios/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sios::reference {

double dft_power_at(const TimeSeries& signal, std::size_t bin) {
  const std::size_t n = signal.samples.size();
  if (n < 2) throw std::invalid_argument("dft_power_at: need at least 2 samples");
  if (bin > n / 2) throw std::out_of_range("dft_power_at: bin beyond Nyquist");

  double mean = 0.0;
  for (double x : signal.samples) mean += x;
  mean /= static_cast<double>(n);

  double re = 0.0;
  double im = 0.0;
  const double step = -2.0 * std::numbers::pi * static_cast<double>(bin) /
                      static_cast<double>(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double phase = step * static_cast<double>(t);
    const double x = signal.samples[t] - mean;
    re += x * std::cos(phase);
    im += x * std::sin(phase);
  }

  const bool one_sided_only = bin == 0 || (n % 2 == 0 && bin == n / 2);
  const double scale = (one_sided_only ? 1.0 : 2.0) /
                       (static_cast<double>(n) * static_cast<double>(n));
  return (re * re + im * im) * scale;
}

PeakSet find_local_peaks(const PowerSpectrum& spectrum,
                         const PeakSearchConfig& config) {
  const std::size_t l = config.half_window_bins;
  if (l < 1) throw std::invalid_argument("reference peaksearch: half_window_bins must be >= 1");
  if (!(config.power_offset >= 0.0))
    throw std::invalid_argument("reference peaksearch: power_offset must be non-negative");
  const std::size_t n = spectrum.size();
  if (n < 2 * l + 3)
    throw std::invalid_argument("reference peaksearch: spectrum too short for the window");

  PeakSet out;
  out.num_bins = n;
  out.indicator.assign(n, 0);
  for (std::size_t k = l; k + l < n; ++k) {
    if (!(spectrum.power[k] > spectrum.power[k - 1])) continue;
    if (!(spectrum.power[k] > spectrum.power[k + 1])) continue;
    double sum = 0.0;
    for (std::size_t i = k - l; i <= k + l; ++i) sum += spectrum.power[i];
    const double threshold =
        sum / static_cast<double>(2 * l + 1) + config.power_offset;
    if (spectrum.power[k] > threshold) {
      out.indicator[k] = 1;
      out.peak_indices.push_back(k);
    }
  }
  return out;
}

Sios construct_sios(const PeakSet& peaks, const PowerSpectrum& spectrum,
                    const FrequencyGrid& grid, double sampling_rate_hz,
                    const SiosOptions& options) {
  if (peaks.num_bins != spectrum.size())
    throw std::invalid_argument("reference construct_sios: mismatched peak set");
  if (grid.components.empty())
    throw std::invalid_argument("reference construct_sios: empty grid");
  if (!(sampling_rate_hz > 0.0))
    throw std::invalid_argument("reference construct_sios: bad sampling rate");
  if (options.enforce_resolution) {
    const ResolutionCheck rc = check_resolution_condition(
        sampling_rate_hz, grid.low_hz, spectrum.bin_spacing_hz);
    if (!rc.pass)
      throw std::runtime_error("reference construct_sios: resolution condition failed");
  }

  const auto& pk = peaks.peak_indices;
  const std::size_t num_components = grid.size();

  Sios out;
  out.grid = grid;
  out.harmonic_count.assign(num_components, 0);
  out.harmonic_power.assign(num_components, 0.0);

  if (options.deduplicate) {
    // Brute force: enumerate every (component, peak, order) triple and apply
    // the acceptance inequality directly. A peak matches at most one order,
    // so each (component, peak) pair counts at most once by construction.
    for (std::size_t i = 0; i < num_components; ++i) {
      const double g = grid.components[i];
      const double alpha = g / grid.spacing_hz;
      const auto beta_max = static_cast<long long>(
          std::floor(sampling_rate_hz / (2.0 * g)));
      for (std::size_t m = 0; m < pk.size(); ++m) {
        const double u = spectrum.frequency_hz[pk[m]] / g;
        for (long long j = 1; j <= beta_max; ++j) {
          const double order = static_cast<double>(j);
          if (std::floor(u) == order && u - order < order / alpha) {
            out.harmonic_count[i] += 1;
            out.harmonic_power[i] += spectrum.power[pk[m]];
          }
        }
      }
    }
    return out;
  }

  // Literal mode: the candidate loop exactly as written, duplicates kept.
  for (std::size_t c = 0; c < pk.size(); ++c) {
    const double candidate_hz = spectrum.frequency_hz[pk[c]];
    if (!(candidate_hz > 0.0)) continue;

    std::size_t best = 0;
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < num_components; ++g) {
      const double order = std::floor(candidate_hz / grid.components[g]);
      if (order < 1.0) continue;  // the 0th multiple is not a harmonic
      const double residual = std::abs(candidate_hz - order * grid.components[g]);
      if (residual < best_residual) {
        best_residual = residual;
        best = g;
      }
    }
    if (!(best_residual < grid.spacing_hz)) continue;

    const double grid_order = grid.components[best] / grid.spacing_hz;
    const auto max_order = static_cast<long long>(
        std::floor(sampling_rate_hz / (2.0 * candidate_hz)));
    std::vector<double> tolerance(static_cast<std::size_t>(std::max(0LL, max_order)) + 1,
                                  0.0);
    for (long long j = 1; j <= max_order; ++j)
      tolerance[static_cast<std::size_t>(j)] = static_cast<double>(j) / grid_order;

    for (std::size_t m = 0; m < pk.size(); ++m) {
      const double peak_hz = spectrum.frequency_hz[pk[m]];
      const double ratio = peak_hz / candidate_hz;
      const long long order = std::llround(ratio);
      if (!(std::abs(ratio - static_cast<double>(order)) <
            0.5 * spectrum.bin_spacing_hz / candidate_hz))
        continue;
      if (order < 1 || order > max_order) continue;
      const double grid_ratio = peak_hz / grid.components[best];
      if (!(grid_ratio - std::floor(grid_ratio) <
            tolerance[static_cast<std::size_t>(order)]))
        continue;
      out.harmonic_count[best] += 1;
      out.harmonic_power[best] += spectrum.power[pk[m]];
    }
  }
  return out;
}

}  // namespace sios::reference
