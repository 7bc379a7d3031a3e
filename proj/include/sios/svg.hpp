#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sios/types.hpp"

namespace sios::svg {

/// Spectrum as a single polyline (one vertex per bin) with Hz-labelled axes.
std::string spectrum_plot(const PowerSpectrum& spectrum, const std::string& title);

/// The two structural indexes as stem plots sharing the grid axis: harmonic
/// count on top, harmonic power below.
std::string sios_plot(const Sios& sios, const std::string& title);

void write_file(const std::string& path, const std::string& content);

}  // namespace sios::svg
