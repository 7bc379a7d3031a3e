#include "sios/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "sios/ingest.hpp"
#include "sios/svg.hpp"

namespace sios {

namespace {

TimeSeries load_record(const PipelineConfig& cfg) {
  if (cfg.simulation) return simulate_bearing_signal(*cfg.simulation);
  if (cfg.input_path.empty())
    throw std::invalid_argument("pipeline: no record source (simulation or input path)");
  if (!(cfg.input_rate_hz > 0.0))
    throw std::invalid_argument("pipeline: file input needs a positive sampling rate");
  return cfg.input_format == InputFormat::csv
             ? read_timeseries_csv(cfg.input_path, cfg.input_rate_hz)
             : read_timeseries_raw_f64le(cfg.input_path, cfg.input_rate_hz);
}

void gate_resolution(const PipelineConfig& cfg, const TimeSeries& signal,
                     const PowerSpectrum& spectrum) {
  if (!cfg.sios_options.enforce_resolution) return;
  const double fs = signal.sampling_rate_hz;
  const ResolutionCheck rc =
      check_resolution_condition(fs, cfg.grid_low_hz, spectrum.bin_spacing_hz);
  if (rc.pass) return;

  // Actionable message: how long the analyzed record must be.
  const double min_samples = std::ceil(fs * fs / (2.0 * cfg.grid_low_hz * cfg.grid_low_hz));
  std::ostringstream msg;
  msg << "pipeline: spectrum resolution " << spectrum.bin_spacing_hz
      << " Hz is too coarse for a grid starting at " << cfg.grid_low_hz
      << " Hz (needs < " << rc.bound_hz << " Hz, margin " << rc.margin
      << "). Analyze at least " << static_cast<long long>(min_samples)
      << " samples per segment (" << static_cast<long long>(2.0 * min_samples)
      << " recommended), or raise the grid start.";
  throw std::runtime_error(msg.str());
}

void write_artifacts(const PipelineConfig& cfg, const PipelineResult& r) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec)
    throw IoError("pipeline: cannot create output directory '" + cfg.output_dir +
                  "': " + ec.message());
  const std::string base = (fs::path(cfg.output_dir) / cfg.output_prefix).string();

  if (cfg.simulation) {
    write_timeseries_csv(r.signal, base + "_signal.csv");
    const SimulationParams& p = *cfg.simulation;
    write_metadata_sidecar(
        base + "_signal.csv",
        {{"sampling_rate_hz", std::to_string(p.sampling_rate_hz)},
         {"num_samples", std::to_string(p.num_samples)},
         {"decay_coefficient", std::to_string(p.decay_coefficient)},
         {"fault_frequency_hz", std::to_string(p.fault_frequency_hz)},
         {"resonant_frequency_hz", std::to_string(p.resonant_frequency_hz)},
         {"slippage_bound", std::to_string(p.slippage_bound)},
         {"snr_db", p.snr_db ? std::to_string(*p.snr_db) : "none"},
         {"rng_seed", std::to_string(p.rng_seed)}});
  }
  write_spectrum_csv(r.spectrum, base + "_spectrum.csv");
  write_peaks_csv(r.peaks, r.spectrum, base + "_peaks.csv");
  write_sios_csv(r.sios, base + "_sios.csv");
  if (r.diagnosis) write_diagnosis(*r.diagnosis, base + "_diagnosis.txt");
  if (cfg.emit_plots) {
    svg::write_file(base + "_spectrum.svg",
                    svg::spectrum_plot(r.spectrum, cfg.output_prefix + ": spectrum"));
    svg::write_file(base + "_sios.svg",
                    svg::sios_plot(r.sios, cfg.output_prefix + ": structural information"));
  }
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  PipelineResult r;
  r.signal = load_record(cfg);

  if (cfg.segments > 1) {
    std::vector<PowerSpectrum> spectra;
    for (const TimeSeries& segment : split_segments(r.signal, cfg.segments))
      spectra.push_back(power_spectrum(segment, cfg.window));
    r.spectrum = average_spectra(spectra);
  } else {
    r.spectrum = power_spectrum(r.signal, cfg.window);
  }

  gate_resolution(cfg, r.signal, r.spectrum);

  r.used_half_window_bins =
      cfg.half_window_bins
          ? *cfg.half_window_bins
          : half_window_for_bandwidth(cfg.bandwidth_hz, r.spectrum.bin_spacing_hz);
  if (cfg.power_offset) {
    r.used_power_offset = *cfg.power_offset;
  } else {
    const OffsetTuning tuning =
        tune_power_offset(r.spectrum, r.used_half_window_bins, cfg.tune_fraction_lo,
                          cfg.tune_fraction_hi);
    r.used_power_offset = tuning.power_offset;
  }
  r.peaks = find_local_peaks(
      r.spectrum, PeakSearchConfig{r.used_half_window_bins, r.used_power_offset});
  r.used_peak_fraction = peak_fraction(r.peaks);

  const FrequencyGrid grid =
      make_grid(cfg.grid_low_hz, cfg.grid_high_hz, cfg.resolution_divisor,
                r.spectrum.bin_spacing_hz, cfg.grid_endpoint);
  r.sios = construct_sios(r.peaks, r.spectrum, grid, r.signal.sampling_rate_hz,
                          cfg.sios_options);

  if (cfg.bearing) r.diagnosis = classify(r.sios, *cfg.bearing, cfg.significance);

  if (!cfg.output_dir.empty()) write_artifacts(cfg, r);
  return r;
}

PipelineConfig pipeline_config_from(const Config& file) {
  PipelineConfig cfg;

  if (file.get_bool("simulate.enabled", false)) {
    SimulationParams p;
    p.decay_coefficient = file.get_double("simulate.decay", p.decay_coefficient);
    p.fault_frequency_hz = file.get_double("simulate.fault_hz", p.fault_frequency_hz);
    p.resonant_frequency_hz =
        file.get_double("simulate.resonance_hz", p.resonant_frequency_hz);
    p.sampling_rate_hz = file.get_double("simulate.fs_hz", p.sampling_rate_hz);
    p.num_samples = static_cast<std::size_t>(
        file.get_int("simulate.samples", static_cast<long long>(p.num_samples)));
    p.slippage_bound = file.get_double("simulate.slip", p.slippage_bound);
    if (file.has("simulate.snr_db")) p.snr_db = file.get_double("simulate.snr_db", 0.0);
    p.rng_seed = static_cast<std::uint64_t>(file.get_int("simulate.seed", 0));
    cfg.simulation = p;
  }

  cfg.input_path = file.get_string("input.path", cfg.input_path);
  const std::string format = file.get_string("input.format", "csv");
  if (format == "csv")
    cfg.input_format = InputFormat::csv;
  else if (format == "raw")
    cfg.input_format = InputFormat::raw_f64le;
  else
    throw FormatError("config key 'input.format': expected csv or raw, got '" + format + "'");
  cfg.input_rate_hz = file.get_double("input.fs_hz", cfg.input_rate_hz);

  cfg.segments = static_cast<std::size_t>(file.get_int("spectrum.segments", 1));
  const std::string window = file.get_string("spectrum.window", "rectangular");
  if (window == "rectangular")
    cfg.window = Window::rectangular;
  else if (window == "hann")
    cfg.window = Window::hann;
  else
    throw FormatError("config key 'spectrum.window': expected rectangular or hann, got '" +
                      window + "'");

  if (file.has("peaks.l_bins"))
    cfg.half_window_bins = static_cast<std::size_t>(file.get_int("peaks.l_bins", 1));
  cfg.bandwidth_hz = file.get_double("peaks.bandwidth_hz", cfg.bandwidth_hz);
  if (file.has("peaks.delta") && file.get_string("peaks.delta", "") != "auto")
    cfg.power_offset = file.get_double("peaks.delta", 0.0);
  cfg.tune_fraction_lo = file.get_double("peaks.fraction_lo", cfg.tune_fraction_lo);
  cfg.tune_fraction_hi = file.get_double("peaks.fraction_hi", cfg.tune_fraction_hi);

  cfg.grid_low_hz = file.get_double("grid.fl_hz", cfg.grid_low_hz);
  cfg.grid_high_hz = file.get_double("grid.fh_hz", cfg.grid_high_hz);
  cfg.resolution_divisor =
      static_cast<int>(file.get_int("grid.theta", cfg.resolution_divisor));
  const std::string endpoint = file.get_string("grid.endpoint", "half_open");
  if (endpoint == "half_open")
    cfg.grid_endpoint = GridEndpoint::half_open;
  else if (endpoint == "inclusive")
    cfg.grid_endpoint = GridEndpoint::inclusive;
  else
    throw FormatError("config key 'grid.endpoint': expected half_open or inclusive, got '" +
                      endpoint + "'");

  cfg.sios_options.deduplicate = file.get_bool("sios.dedup", cfg.sios_options.deduplicate);
  cfg.sios_options.enforce_resolution =
      file.get_bool("sios.enforce_resolution", cfg.sios_options.enforce_resolution);

  if (file.has("bearing.rpm") || file.has("bearing.fr_hz")) {
    BearingSpec spec;
    spec.shaft_freq_hz = file.has("bearing.fr_hz")
                             ? file.get_double("bearing.fr_hz", 0.0)
                             : file.get_double("bearing.rpm", 0.0) / 60.0;
    spec.bpfo_mult = file.get_double("bearing.bpfo", spec.bpfo_mult);
    spec.bpfi_mult = file.get_double("bearing.bpfi", spec.bpfi_mult);
    spec.ftf_mult = file.get_double("bearing.ftf", spec.ftf_mult);
    spec.bsf_mult = file.get_double("bearing.bsf", spec.bsf_mult);
    spec.bpfo_lock_mult = file.get_double("bearing.bpfo_lock", spec.bpfo_lock_mult);
    spec.bpfi_lock_mult = file.get_double("bearing.bpfi_lock", spec.bpfi_lock_mult);
    spec.ftf_lock_mult = file.get_double("bearing.ftf_lock", spec.ftf_lock_mult);
    spec.bsf_lock_mult = file.get_double("bearing.bsf_lock", spec.bsf_lock_mult);
    cfg.bearing = spec;
  }

  cfg.significance.top_m = static_cast<std::size_t>(
      file.get_int("significance.top_m", static_cast<long long>(cfg.significance.top_m)));
  cfg.significance.dominance_ratio =
      file.get_double("significance.dominance_ratio", cfg.significance.dominance_ratio);
  cfg.significance.match_tol_rel =
      file.get_double("significance.match_tol", cfg.significance.match_tol_rel);

  cfg.output_dir = file.get_string("output.dir", cfg.output_dir);
  cfg.output_prefix = file.get_string("output.prefix", cfg.output_prefix);
  cfg.emit_plots = file.get_bool("output.plots", cfg.emit_plots);
  return cfg;
}

}  // namespace sios
