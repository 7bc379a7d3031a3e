#pragma once

#include <cstddef>

#include "sios/types.hpp"

namespace sios {

/// Peak acceptance: bin k is a peak when it strictly exceeds both direct
/// neighbours and the centered moving average of 2l+1 bins plus the offset.
struct PeakSearchConfig {
  std::size_t half_window_bins = 1;  // l; the average spans 2l+1 bins
  double power_offset = 0.0;         // added to the moving average
};

/// Number of half-window bins so that 2l+1 bins span approximately
/// `bandwidth_hz` of spectrum (never less than 1).
std::size_t half_window_for_bandwidth(double bandwidth_hz, double bin_spacing_hz);

/// The acceptance threshold at `bin`: mean of power over
/// [bin - l, bin + l] plus the offset. `bin` must keep the window inside
/// the spectrum, i.e. l <= bin <= size - l - 1.
double moving_average_threshold(const PowerSpectrum& spectrum,
                                const PeakSearchConfig& config, std::size_t bin);

/// Scans every bin whose comparison window fits (boundary bins are never
/// peaks). Requires at least 2l+3 bins. Ties with a neighbour or with the
/// threshold are rejected. Bins are independent, so the scan is
/// parallelized; the result does not depend on the thread count.
PeakSet find_local_peaks(const PowerSpectrum& spectrum,
                         const PeakSearchConfig& config);

/// Accepted peaks as a fraction of all bins.
double peak_fraction(const PeakSet& peaks);

struct OffsetTuning {
  double power_offset = 0.0;
  double fraction = 0.0;
};

/// Bisects the offset so the accepted-peak fraction lands inside
/// [fraction_lo, fraction_hi]. Raising the offset never adds peaks, which
/// makes the fraction monotone non-increasing in it. When the band cannot
/// be hit exactly (the fraction jumps over it), the result lands on the
/// too-many-peaks side: spurious peaks are cheap, lost harmonics are not.
OffsetTuning tune_power_offset(const PowerSpectrum& spectrum,
                               std::size_t half_window_bins,
                               double fraction_lo = 0.005,
                               double fraction_hi = 0.03);

}  // namespace sios
