#include "sios/sios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sios {

FrequencyGrid make_grid(double low_hz, double high_hz, int resolution_divisor,
                        double bin_spacing_hz, GridEndpoint endpoint) {
  if (!(low_hz > 0.0))
    throw std::invalid_argument("make_grid: low_hz must be positive");
  if (!(high_hz > low_hz))
    throw std::invalid_argument("make_grid: high_hz must exceed low_hz");
  if (resolution_divisor < 1)
    throw std::invalid_argument("make_grid: resolution_divisor must be >= 1");
  if (!(bin_spacing_hz > 0.0))
    throw std::invalid_argument("make_grid: bin_spacing_hz must be positive");

  FrequencyGrid grid;
  grid.low_hz = low_hz;
  grid.high_hz = high_hz;
  grid.resolution_divisor = resolution_divisor;
  grid.spacing_hz = bin_spacing_hz / static_cast<double>(resolution_divisor);

  // Nudge the count by half an ulp's worth so that an endpoint that is a
  // whole number of steps away lands consistently: excluded when half-open,
  // included when inclusive.
  const double steps = (high_hz - low_hz) / grid.spacing_hz;
  const std::size_t count =
      endpoint == GridEndpoint::half_open
          ? static_cast<std::size_t>(std::ceil(steps - 1e-9))
          : static_cast<std::size_t>(std::floor(steps + 1e-9)) + 1;

  grid.components.resize(count);
  for (std::size_t i = 0; i < count; ++i)
    grid.components[i] = low_hz + static_cast<double>(i) * grid.spacing_hz;
  return grid;
}

ResolutionCheck check_resolution_condition(double sampling_rate_hz,
                                           double grid_low_hz,
                                           double bin_spacing_hz) {
  if (!(sampling_rate_hz > 0.0))
    throw std::invalid_argument("resolution check: sampling_rate_hz must be positive");
  if (!(grid_low_hz > 0.0))
    throw std::invalid_argument("resolution check: grid_low_hz must be positive");
  if (!(bin_spacing_hz > 0.0))
    throw std::invalid_argument("resolution check: bin_spacing_hz must be positive");

  ResolutionCheck out;
  out.bound_hz = 2.0 * grid_low_hz * grid_low_hz / sampling_rate_hz;
  out.margin = sampling_rate_hz * bin_spacing_hz / (2.0 * grid_low_hz * grid_low_hz);
  out.pass = bin_spacing_hz < out.bound_hz;
  return out;
}

std::optional<Projection> project_peak(double peak_hz, const FrequencyGrid& grid) {
  if (!(peak_hz > 0.0))
    throw std::invalid_argument("project_peak: peak_hz must be positive");
  if (grid.components.empty())
    throw std::invalid_argument("project_peak: empty grid");

  // Exhaustive scan; with < present, the first minimum (lowest component)
  // wins ties. Components above the peak only offer the 0th multiple, which
  // is 0 Hz and not a harmonic, so they never compete.
  std::size_t best = 0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.components.size(); ++k) {
    const double g = grid.components[k];
    const double order = std::floor(peak_hz / g);
    if (order < 1.0) continue;
    const double residual = std::abs(peak_hz - order * g);
    if (residual < best_residual) {
      best_residual = residual;
      best = k;
    }
  }
  if (!(best_residual < grid.spacing_hz)) return std::nullopt;
  return Projection{best, best_residual};
}

namespace {

// One accepted (candidate, peak) projection event. Accumulation happens
// after a global sort of these, which is what makes the parallel scan
// deterministic.
struct Hit {
  std::uint32_t component;
  std::uint32_t peak;       // index into peak_indices
  std::uint32_t candidate;  // index into peak_indices
};

void validate_inputs(const PeakSet& peaks, const PowerSpectrum& spectrum,
                     const FrequencyGrid& grid, double sampling_rate_hz) {
  if (peaks.num_bins != spectrum.size())
    throw std::invalid_argument(
        "construct_sios: peak set was built from a spectrum of different length");
  if (grid.components.empty())
    throw std::invalid_argument("construct_sios: empty grid");
  if (!(sampling_rate_hz > 0.0))
    throw std::invalid_argument("construct_sios: sampling_rate_hz must be positive");
  if (!(spectrum.bin_spacing_hz > 0.0))
    throw std::invalid_argument("construct_sios: bin_spacing_hz must be positive");
  for (std::size_t idx : peaks.peak_indices)
    if (idx >= spectrum.size())
      throw std::invalid_argument("construct_sios: peak index out of range");
}

}  // namespace

Sios construct_sios(const PeakSet& peaks, const PowerSpectrum& spectrum,
                    const FrequencyGrid& grid, double sampling_rate_hz,
                    const SiosOptions& options) {
  validate_inputs(peaks, spectrum, grid, sampling_rate_hz);

  if (options.enforce_resolution) {
    const ResolutionCheck rc = check_resolution_condition(
        sampling_rate_hz, grid.low_hz, spectrum.bin_spacing_hz);
    if (!rc.pass) {
      std::ostringstream msg;
      msg << "construct_sios: spectrum resolution " << spectrum.bin_spacing_hz
          << " Hz is too coarse for a grid starting at " << grid.low_hz
          << " Hz (needs < " << rc.bound_hz << " Hz, margin " << rc.margin
          << "); lengthen the record or lower the grid start";
      throw std::runtime_error(msg.str());
    }
  }

  const auto& pk = peaks.peak_indices;
  const auto num_peaks = static_cast<std::ptrdiff_t>(pk.size());

  Sios out;
  out.grid = grid;
  out.harmonic_count.assign(grid.size(), 0);
  out.harmonic_power.assign(grid.size(), 0.0);

  if (options.deduplicate) {
    // Component-major census: a peak at frequency F belongs to component g
    // as its order-floor(F/g) harmonic when the fractional part of F/g stays
    // below order / (g / spacing) -- the slippage window, which widens with
    // the order exactly as fast as an off-component fundamental drifts. Each
    // (component, peak) pair is tested once, so components are independent
    // and the parallel loop needs no synchronisation; per-component sums run
    // in ascending peak order regardless of thread count.
    const auto num_components = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < num_components; ++i) {
      const double g = grid.components[i];
      const double alpha = g / grid.spacing_hz;
      int count = 0;
      double power = 0.0;
      for (std::ptrdiff_t m = 0; m < num_peaks; ++m) {
        const double u = spectrum.frequency_hz[pk[m]] / g;
        const double order = std::floor(u);
        if (order < 1.0) continue;  // below g: no positive multiple nearby
        if (u - order < order / alpha) {
          count += 1;
          power += spectrum.power[pk[m]];
        }
      }
      out.harmonic_count[i] = count;
      out.harmonic_power[i] = power;
    }
    return out;
  }

  // Literal mode: replay the candidate loop verbatim. Every peak acts as a
  // candidate fundamental, projects onto one grid component, and each peak
  // standing in a near-integer frequency ratio to it (within half a bin,
  // relative to the candidate) that also passes the slippage window counts
  // again -- duplicates and all.
  const double bin_spacing = spectrum.bin_spacing_hz;

  std::vector<Hit> hits;
#pragma omp parallel
  {
    std::vector<Hit> local;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::ptrdiff_t c = 0; c < num_peaks; ++c) {
      const double candidate_hz = spectrum.frequency_hz[pk[c]];
      if (!(candidate_hz > 0.0)) continue;  // DC is never a fundamental

      const auto projection = project_peak(candidate_hz, grid);
      if (!projection) continue;
      const std::size_t component = projection->component_index;

      // Grid order of the component and the largest harmonic order that can
      // still sit below Nyquist for this candidate.
      const double grid_order = grid.components[component] / grid.spacing_hz;
      const double max_order = std::floor(sampling_rate_hz / (2.0 * candidate_hz));
      // Two bin frequencies are an integer ratio when the ratio is within
      // half a bin (relative to the candidate) of a whole number.
      const double half_bin = 0.5 * bin_spacing / candidate_hz;

      for (std::ptrdiff_t m = 0; m < num_peaks; ++m) {
        const double peak_hz = spectrum.frequency_hz[pk[m]];
        const double ratio = peak_hz / candidate_hz;
        const double order = std::round(ratio);
        if (!(std::abs(ratio - order) < half_bin)) continue;
        if (order < 1.0 || order > max_order) continue;
        // Slippage tolerance: the fractional grid-order of the peak must
        // stay below harmonic order / grid order.
        const double grid_ratio = peak_hz / grid.components[component];
        if (grid_ratio - std::floor(grid_ratio) < order / grid_order)
          local.push_back({static_cast<std::uint32_t>(component),
                           static_cast<std::uint32_t>(m),
                           static_cast<std::uint32_t>(c)});
      }
    }
#pragma omp critical
    hits.insert(hits.end(), local.begin(), local.end());
  }

  // Every accepted (candidate, peak) event counts, summed candidate-major
  // exactly like a serial candidate-by-candidate scan would.
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.component != b.component) return a.component < b.component;
    if (a.candidate != b.candidate) return a.candidate < b.candidate;
    return a.peak < b.peak;
  });
  for (const Hit& h : hits) {
    out.harmonic_count[h.component] += 1;
    out.harmonic_power[h.component] += spectrum.power[pk[h.peak]];
  }
  return out;
}

}  // namespace sios
