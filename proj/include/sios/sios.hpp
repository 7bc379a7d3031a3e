#pragma once

#include <cstddef>
#include <optional>

#include "sios/types.hpp"

namespace sios {

enum class GridEndpoint { half_open, inclusive };

/// Builds the candidate-fundamental grid over [low_hz, high_hz) — or
/// [low_hz, high_hz] in inclusive mode — with spacing
/// bin_spacing_hz / resolution_divisor. low_hz must be positive and below
/// high_hz; resolution_divisor must be a positive integer.
FrequencyGrid make_grid(double low_hz, double high_hz, int resolution_divisor,
                        double bin_spacing_hz,
                        GridEndpoint endpoint = GridEndpoint::half_open);

struct ResolutionCheck {
  bool pass = false;
  double bound_hz = 0.0;  // spectra at least this fine keep harmonic order
                          // below grid order for every projectable peak
  double margin = 0.0;    // sampling_rate * spacing / (2 * low^2); < 1 required
};

/// The spectrum is fine enough for grid projection when
/// bin_spacing < 2 * grid_low^2 / sampling_rate. Otherwise a peak one bin
/// off a true harmonic can be claimed by the wrong grid component.
ResolutionCheck check_resolution_condition(double sampling_rate_hz,
                                           double grid_low_hz,
                                           double bin_spacing_hz);

struct Projection {
  std::size_t component_index = 0;
  double residual_hz = 0.0;  // in [0, grid spacing)
};

/// Maps a peak frequency to the grid component it is most plausibly an
/// integer harmonic of: the component minimizing
/// |peak_hz - floor(peak_hz / G) * G|, accepted only when that residual is
/// below the grid spacing. Exact ties go to the lowest-index (lowest
/// frequency) component. Peaks below the grid start have no integer
/// multiple near them and return nothing.
std::optional<Projection> project_peak(double peak_hz, const FrequencyGrid& grid);

struct SiosOptions {
  /// Count each (peak, component) pair at most once, by scanning grid
  /// components directly: a peak at F counts for component g when the
  /// fractional part of F/g stays below order/(g/spacing). When false, the
  /// classic candidate loop is replayed literally — every peak projects onto
  /// one component and routes its near-integer-ratio partners there — so a
  /// peak can accumulate once per candidate, inflating N and E for strongly
  /// harmonic spectra.
  bool deduplicate = true;
  /// Refuse to run when check_resolution_condition fails.
  bool enforce_resolution = true;
};

/// Builds the structural information of the spectrum — per grid component,
/// the number N of detected peaks sitting just above one of its integer
/// multiples and their summed power E. The slippage window for the order-j
/// multiple is j grid steps wide, so a fundamental anywhere in
/// [g, g + spacing) lands all its harmonics on component g. Deduplicated
/// mode scans components in parallel with per-component accumulation in
/// ascending peak order; literal mode scans candidates in parallel and fixes
/// the accumulation order by a sort. Neither depends on the thread count.
Sios construct_sios(const PeakSet& peaks, const PowerSpectrum& spectrum,
                    const FrequencyGrid& grid, double sampling_rate_hz,
                    const SiosOptions& options = {});

}  // namespace sios
