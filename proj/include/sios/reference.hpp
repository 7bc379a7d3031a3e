#pragma once

#include <cstddef>

#include "sios/peaksearch.hpp"
#include "sios/sios.hpp"
#include "sios/types.hpp"

/// Serial reference implementations of the parallel kernels, written as
/// straight-line loops with no shared code beyond the public types. They are
/// the ground truth the parallel kernels are tested against and the baseline
/// the benchmarks compare with; production code should call the sios::
/// versions instead.
namespace sios::reference {

/// Direct single-bin DFT with mean removal and the same single-sided
/// scaling as power_spectrum. O(n) per bin; an FFT-free oracle.
double dft_power_at(const TimeSeries& signal, std::size_t bin);

PeakSet find_local_peaks(const PowerSpectrum& spectrum,
                         const PeakSearchConfig& config);

Sios construct_sios(const PeakSet& peaks, const PowerSpectrum& spectrum,
                    const FrequencyGrid& grid, double sampling_rate_hz,
                    const SiosOptions& options = {});

}  // namespace sios::reference
