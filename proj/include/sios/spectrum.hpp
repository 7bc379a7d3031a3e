#pragma once

#include <vector>

#include "sios/types.hpp"

namespace sios {

enum class Window { rectangular, hann };

/// Single-sided power amplitude spectrum of a record. The sample mean is
/// removed before the transform, so P(0) is zero up to rounding. Interior
/// bins carry the doubled one-sided convention: a unit-amplitude bin-aligned
/// sinusoid shows up with power 0.5 (its mean square), and with the
/// rectangular window the bins sum to the mean square of the de-meaned
/// input (Parseval). The Hann window is periodic and normalized by its
/// squared sum, which preserves that bin-sum for broadband content.
PowerSpectrum power_spectrum(const TimeSeries& signal,
                             Window window = Window::rectangular);

/// Splits a record into `count` equal, consecutive, non-overlapping
/// segments, discarding remainder samples at the end.
std::vector<TimeSeries> split_segments(const TimeSeries& signal,
                                       std::size_t count);

/// Bin-wise arithmetic mean. All spectra must agree in length and
/// resolution.
PowerSpectrum average_spectra(const std::vector<PowerSpectrum>& spectra);

}  // namespace sios
