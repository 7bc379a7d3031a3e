#pragma once

#include <optional>
#include <string>

#include "sios/config.hpp"
#include "sios/diagnose.hpp"
#include "sios/peaksearch.hpp"
#include "sios/simulate.hpp"
#include "sios/sios.hpp"
#include "sios/spectrum.hpp"
#include "sios/types.hpp"

namespace sios {

enum class InputFormat { csv, raw_f64le };

/// End-to-end settings: record source, spectrum estimation, peak search,
/// grid, and (optionally) classification and artifact output.
struct PipelineConfig {
  // Record source: a simulation, or a file when simulation is empty.
  std::optional<SimulationParams> simulation;
  std::string input_path;
  InputFormat input_format = InputFormat::csv;
  double input_rate_hz = 0.0;

  std::size_t segments = 1;  // averaged, non-overlapping
  Window window = Window::rectangular;

  std::optional<std::size_t> half_window_bins;  // wins over bandwidth_hz
  double bandwidth_hz = 114.0;                  // moving-average span
  std::optional<double> power_offset;           // empty: tuned automatically
  double tune_fraction_lo = 0.005;
  double tune_fraction_hi = 0.03;

  double grid_low_hz = 100.0;
  double grid_high_hz = 200.0;
  int resolution_divisor = 10;
  GridEndpoint grid_endpoint = GridEndpoint::half_open;
  SiosOptions sios_options;

  std::optional<BearingSpec> bearing;  // empty: stop before classification
  SignificanceConfig significance;

  std::string output_dir;  // empty: write nothing
  std::string output_prefix = "record";
  bool emit_plots = false;
};

struct PipelineResult {
  TimeSeries signal;
  PowerSpectrum spectrum;
  PeakSet peaks;
  std::size_t used_half_window_bins = 0;
  double used_power_offset = 0.0;
  double used_peak_fraction = 0.0;
  Sios sios;
  std::optional<DiagnosisResult> diagnosis;
};

/// Runs source -> spectrum -> peaks -> structure -> (classify) -> (write).
/// Stage behavior is identical to calling the stages directly; this only
/// wires them together.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Fills a PipelineConfig from a parsed configuration file; keys that are
/// absent keep their defaults. See the README for the key list.
PipelineConfig pipeline_config_from(const Config& file);

}  // namespace sios
