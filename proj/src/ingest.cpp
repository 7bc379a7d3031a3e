#include "sios/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sios {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_for_read(const std::string& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw FileOpenError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_for_write(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// Trims trailing CR (files may come from Windows tools) and spaces.
void rstrip(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    line.pop_back();
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.c_str();
  const char* end = begin + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TimeSeries read_timeseries_csv(const std::string& path, double sampling_rate_hz) {
  if (!(sampling_rate_hz > 0.0))
    throw std::invalid_argument("read_timeseries_csv: sampling_rate_hz must be positive");
  std::ifstream in = open_for_read(path, std::ios::in);

  TimeSeries out;
  out.sampling_rate_hz = sampling_rate_hz;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    rstrip(line);
    if (line.empty()) continue;
    double value = 0.0;
    if (!parse_double(line, value)) {
      if (line_no == 1) continue;  // header
      throw FormatError(path + ":" + std::to_string(line_no) + ": not a number: '" +
                        line + "'");
    }
    out.samples.push_back(value);
  }
  if (out.samples.empty()) throw FormatError(path + ": no samples");
  return out;
}

TimeSeries read_timeseries_raw_f64le(const std::string& path, double sampling_rate_hz) {
  if (!(sampling_rate_hz > 0.0))
    throw std::invalid_argument("read_timeseries_raw_f64le: sampling_rate_hz must be positive");
  std::ifstream in = open_for_read(path, std::ios::in | std::ios::binary);

  in.seekg(0, std::ios::end);
  const std::streamoff bytes = in.tellg();
  in.seekg(0, std::ios::beg);
  if (bytes <= 0) throw FormatError(path + ": empty file");
  if (bytes % 8 != 0)
    throw FormatError(path + ": size " + std::to_string(bytes) +
                      " bytes is not a multiple of 8; trailing partial value at byte " +
                      std::to_string(bytes - bytes % 8));

  TimeSeries out;
  out.sampling_rate_hz = sampling_rate_hz;
  out.samples.resize(static_cast<std::size_t>(bytes / 8));
  in.read(reinterpret_cast<char*>(out.samples.data()), bytes);
  if (!in) throw FormatError(path + ": short read");
  return out;
}

void write_timeseries_csv(const TimeSeries& signal, const std::string& path) {
  std::ofstream out = open_for_write(path, std::ios::out);
  for (double x : signal.samples) out << format_double(x) << '\n';
  finish_write(out, path);
}

void write_timeseries_raw_f64le(const TimeSeries& signal, const std::string& path) {
  std::ofstream out = open_for_write(path, std::ios::out | std::ios::binary);
  out.write(reinterpret_cast<const char*>(signal.samples.data()),
            static_cast<std::streamsize>(signal.samples.size() * sizeof(double)));
  finish_write(out, path);
}

void write_metadata_sidecar(const std::string& data_path,
                            const std::vector<std::pair<std::string, std::string>>& keys) {
  std::ofstream out = open_for_write(data_path + ".meta", std::ios::out);
  for (const auto& [key, value] : keys) out << key << '=' << value << '\n';
  finish_write(out, data_path + ".meta");
}

void write_spectrum_csv(const PowerSpectrum& spectrum, const std::string& path) {
  std::ofstream out = open_for_write(path, std::ios::out);
  out << "f_hz,p\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k)
    out << format_double(spectrum.frequency_hz[k]) << ','
        << format_double(spectrum.power[k]) << '\n';
  finish_write(out, path);
}

PowerSpectrum read_spectrum_csv(const std::string& path) {
  std::ifstream in = open_for_read(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");
  rstrip(line);
  if (line != "f_hz,p")
    throw FormatError(path + ":1: expected header 'f_hz,p', got '" + line + "'");

  PowerSpectrum out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    rstrip(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    double f = 0.0;
    double p = 0.0;
    if (fields.size() != 2 || !parse_double(fields[0], f) || !parse_double(fields[1], p))
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad row: '" + line + "'");
    out.frequency_hz.push_back(f);
    out.power.push_back(p);
  }
  if (out.size() < 2) throw FormatError(path + ": need at least 2 bins");
  if (out.frequency_hz.front() != 0.0)
    throw FormatError(path + ": first bin must sit at 0 Hz");
  out.bin_spacing_hz = out.frequency_hz[1] - out.frequency_hz[0];
  if (!(out.bin_spacing_hz > 0.0)) throw FormatError(path + ": bins must increase");
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double expected = static_cast<double>(k) * out.bin_spacing_hz;
    if (std::abs(out.frequency_hz[k] - expected) > 1e-6 * (expected + 1.0))
      throw FormatError(path + ":" + std::to_string(k + 2) +
                        ": bin frequencies are not uniformly spaced");
  }
  return out;
}

void write_peaks_csv(const PeakSet& peaks, const PowerSpectrum& spectrum,
                     const std::string& path) {
  if (peaks.num_bins != spectrum.size())
    throw std::invalid_argument("write_peaks_csv: peak set does not match spectrum");
  std::ofstream out = open_for_write(path, std::ios::out);
  out << "bin,f_hz,p\n";
  for (std::size_t k : peaks.peak_indices)
    out << k << ',' << format_double(spectrum.frequency_hz[k]) << ','
        << format_double(spectrum.power[k]) << '\n';
  finish_write(out, path);
}

void write_sios_csv(const Sios& sios, const std::string& path) {
  std::ofstream out = open_for_write(path, std::ios::out);
  out << "G_hz,N,E\n";
  for (std::size_t i = 0; i < sios.grid.size(); ++i)
    out << format_double(sios.grid.components[i]) << ',' << sios.harmonic_count[i]
        << ',' << format_double(sios.harmonic_power[i]) << '\n';
  finish_write(out, path);
}

Sios read_sios_csv(const std::string& path) {
  std::ifstream in = open_for_read(path, std::ios::in);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": empty file");
  rstrip(line);
  if (line != "G_hz,N,E")
    throw FormatError(path + ":1: expected header 'G_hz,N,E', got '" + line + "'");

  Sios out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    rstrip(line);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    double g = 0.0;
    double e = 0.0;
    double n = 0.0;
    if (fields.size() != 3 || !parse_double(fields[0], g) ||
        !parse_double(fields[1], n) || !parse_double(fields[2], e) ||
        n != std::floor(n) || n < 0.0)
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad row: '" + line + "'");
    out.grid.components.push_back(g);
    out.harmonic_count.push_back(static_cast<int>(n));
    out.harmonic_power.push_back(e);
  }
  if (out.grid.components.empty()) throw FormatError(path + ": no components");
  for (std::size_t i = 1; i < out.grid.components.size(); ++i)
    if (!(out.grid.components[i] > out.grid.components[i - 1]))
      throw FormatError(path + ": component frequencies must increase");

  out.grid.low_hz = out.grid.components.front();
  out.grid.resolution_divisor = 1;
  out.grid.spacing_hz = out.grid.components.size() > 1
                            ? out.grid.components[1] - out.grid.components[0]
                            : out.grid.components[0];
  out.grid.high_hz = out.grid.components.back() + out.grid.spacing_hz;
  return out;
}

void write_diagnosis(const DiagnosisResult& result, const std::string& path) {
  std::ofstream out = open_for_write(path, std::ios::out);
  out << "verdict=" << verdict_letter(result.verdict) << '\n';
  const char* fault = "none";
  switch (result.fault) {
    case FaultClass::inner_race: fault = "inner_race"; break;
    case FaultClass::outer_race: fault = "outer_race"; break;
    case FaultClass::ball: fault = "ball"; break;
    case FaultClass::none: break;
  }
  out << "fault=" << fault << '\n';
  out << "exit_code=" << exit_code(result.verdict) << '\n';
  out << "ball_pattern=" << (result.ball_pattern_found ? 1 : 0) << '\n';
  if (!result.notes.empty()) out << "notes=" << result.notes << '\n';
  for (const auto& e : result.evidence)
    out << "evidence=" << format_double(e.frequency_hz) << " Hz N=" << e.harmonic_count
        << " E=" << format_double(e.harmonic_power) << " : " << e.label << '\n';
  finish_write(out, path);
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
  std::ifstream in = open_for_read(path, std::ios::in);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ManifestRow> rows;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    rstrip(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {  // first data-looking line is the header
      header_seen = true;
      continue;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 12)
      throw FormatError(path + ":" + std::to_string(line_no) + ": expected 12 fields, got " +
                        std::to_string(fields.size()));
    ManifestRow row;
    row.record_id = fields[0];
    row.file = fields[1];
    double theta = 0.0;
    if (!parse_double(fields[2], row.sampling_rate_hz) ||
        !parse_double(fields[3], row.shaft_rpm) ||
        !parse_double(fields[4], row.grid_low_hz) ||
        !parse_double(fields[5], row.grid_high_hz) || !parse_double(fields[6], theta) ||
        !parse_double(fields[8], row.bandwidth_hz))
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad numeric field");
    row.resolution_divisor = static_cast<int>(theta);
    if (!fields[7].empty() && fields[7] != "auto") {
      double delta = 0.0;
      if (!parse_double(fields[7], delta))
        throw FormatError(path + ":" + std::to_string(line_no) + ": bad delta");
      row.power_offset = delta;
    }
    row.expected_verdict = fields[9];
    if (!row.expected_verdict.empty() && row.expected_verdict != "Y" &&
        row.expected_verdict != "P" && row.expected_verdict != "N")
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad verdict '" +
                        row.expected_verdict + "'");
    row.expected_fault = fields[10];
    if (!fields[11].empty()) {
      double hz = 0.0;
      if (!parse_double(fields[11], hz))
        throw FormatError(path + ":" + std::to_string(line_no) + ": bad dominant frequency");
      row.expected_dominant_hz = hz;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError(path + ": no rows");
  return rows;
}

}  // namespace sios
