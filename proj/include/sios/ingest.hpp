#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sios/diagnose.hpp"
#include "sios/types.hpp"

namespace sios {

/// Input file missing or unreadable.
struct FileOpenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File opened but its content is not in the documented format. Messages
/// name the offending line or byte offset.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One sample per line, plain decimal; an optional single header line is
/// skipped. The sampling rate is not stored in the file and must be given.
TimeSeries read_timeseries_csv(const std::string& path, double sampling_rate_hz);

/// Raw little-endian IEEE-754 doubles, no header.
TimeSeries read_timeseries_raw_f64le(const std::string& path, double sampling_rate_hz);

/// Writers use enough digits for the values to round-trip exactly.
void write_timeseries_csv(const TimeSeries& signal, const std::string& path);
void write_timeseries_raw_f64le(const TimeSeries& signal, const std::string& path);

/// key=value sidecar at path + ".meta" recording how a record was produced.
void write_metadata_sidecar(const std::string& data_path,
                            const std::vector<std::pair<std::string, std::string>>& keys);

/// Columns "f_hz,p".
void write_spectrum_csv(const PowerSpectrum& spectrum, const std::string& path);

/// Inverse of write_spectrum_csv. Bin frequencies must be uniformly spaced
/// and start at 0.
PowerSpectrum read_spectrum_csv(const std::string& path);

/// Columns "bin,f_hz,p", one row per accepted peak.
void write_peaks_csv(const PeakSet& peaks, const PowerSpectrum& spectrum,
                     const std::string& path);

/// Columns "G_hz,N,E", one row per grid component.
void write_sios_csv(const Sios& sios, const std::string& path);

/// Inverse of write_sios_csv. The grid is reconstructed from the component
/// frequencies (its resolution divisor is not stored and reads back as 1).
Sios read_sios_csv(const std::string& path);

/// key=value report; the first line is "verdict=Y|P|N".
void write_diagnosis(const DiagnosisResult& result, const std::string& path);

/// One row of the reproduction manifest.
struct ManifestRow {
  std::string record_id;
  std::string file;  // relative to the data root
  double sampling_rate_hz = 0.0;
  double shaft_rpm = 0.0;
  double grid_low_hz = 0.0;
  double grid_high_hz = 0.0;
  int resolution_divisor = 1;
  std::optional<double> power_offset;  // empty: tune automatically
  double bandwidth_hz = 0.0;           // moving-average span
  std::string expected_verdict;        // "Y", "P", "N", or empty
  std::string expected_fault;          // "inner", "outer", "ball", or empty
  std::optional<double> expected_dominant_hz;
};

/// Header: record_id,file,fs_hz,rpm,fl_hz,fh_hz,theta,delta,bandwidth_hz,
/// expected_verdict,expected_fault,expected_dominant_hz. Blank lines and
/// lines starting with '#' are skipped; delta may be the word "auto".
std::vector<ManifestRow> read_manifest(const std::string& path);

}  // namespace sios
