#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "sios/ingest.hpp"
#include "sios/pipeline.hpp"
#include "sios/svg.hpp"

namespace {

// Verdict-bearing subcommands communicate through the process status:
// 0 = fault confirmed (Y), 10 = partial evidence (P), 20 = no match (N).
// Usage errors exit 64, unreadable input 66, malformed data 65, write
// trouble 74, anything unexpected 70.
int g_status = 0;

struct PeakFlags {
  std::optional<std::size_t> l_bins;
  double l_hz = 114.0;
  std::string delta = "auto";
  double fraction_lo = 0.005;
  double fraction_hi = 0.03;

  void attach(CLI::App& cmd) {
    cmd.add_option("--l-bins", l_bins,
                   "moving-average half window in bins (overrides --l-hz)");
    cmd.add_option("--l-hz", l_hz, "moving-average span in Hz")
        ->capture_default_str();
    cmd.add_option("--delta", delta, "peak threshold offset, or 'auto'")
        ->capture_default_str();
    cmd.add_option("--fraction-lo", fraction_lo, "auto-delta: lowest acceptable peak fraction")
        ->capture_default_str();
    cmd.add_option("--fraction-hi", fraction_hi, "auto-delta: highest acceptable peak fraction")
        ->capture_default_str();
  }

};

struct GridFlags {
  double fl = 100.0;
  double fh = 200.0;
  int theta = 10;
  bool inclusive = false;
  bool literal_pseudocode = false;
  bool no_resolution_check = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--fl", fl, "grid start [Hz]")->capture_default_str();
    cmd.add_option("--fh", fh, "grid end [Hz]")->capture_default_str();
    cmd.add_option("--theta", theta, "grid refinement: spacing = resolution / theta")
        ->capture_default_str();
    cmd.add_flag("--inclusive", inclusive, "include the grid end point");
    cmd.add_flag("--literal-pseudocode", literal_pseudocode,
                 "count repeated (peak, component) projections instead of deduplicating");
    cmd.add_flag("--no-resolution-check", no_resolution_check,
                 "proceed even when the resolution condition fails");
  }

  void apply(sios::PipelineConfig& cfg) const {
    cfg.grid_low_hz = fl;
    cfg.grid_high_hz = fh;
    cfg.resolution_divisor = theta;
    cfg.grid_endpoint =
        inclusive ? sios::GridEndpoint::inclusive : sios::GridEndpoint::half_open;
    cfg.sios_options.deduplicate = !literal_pseudocode;
    cfg.sios_options.enforce_resolution = !no_resolution_check;
  }
};

struct BearingFlags {
  std::optional<double> rpm;
  std::optional<double> fr_hz;
  sios::BearingSpec spec;  // multiplier defaults
  sios::SignificanceConfig significance;

  void attach(CLI::App& cmd) {
    cmd.add_option("--rpm", rpm, "shaft speed [rev/min]");
    cmd.add_option("--fr", fr_hz, "shaft frequency [Hz] (overrides --rpm)");
    cmd.add_option("--bpfo", spec.bpfo_mult, "BPFO multiplier")->capture_default_str();
    cmd.add_option("--bpfi", spec.bpfi_mult, "BPFI multiplier")->capture_default_str();
    cmd.add_option("--ftf", spec.ftf_mult, "FTF multiplier")->capture_default_str();
    cmd.add_option("--bsf", spec.bsf_mult, "BSF multiplier")->capture_default_str();
    cmd.add_option("--top-m", significance.top_m, "significance rank cutoff")
        ->capture_default_str();
    cmd.add_option("--dominance-ratio", significance.dominance_ratio,
                   "required power lead over a rival family")
        ->capture_default_str();
    cmd.add_option("--match-tol", significance.match_tol_rel,
                   "relative frequency matching tolerance")
        ->capture_default_str();
  }

  std::optional<sios::BearingSpec> resolve() const {
    if (!rpm && !fr_hz) return std::nullopt;
    sios::BearingSpec out = spec;
    out.shaft_freq_hz = fr_hz ? *fr_hz : *rpm / 60.0;
    return out;
  }
};

sios::InputFormat parse_format(const std::string& format) {
  if (format == "csv") return sios::InputFormat::csv;
  if (format == "raw") return sios::InputFormat::raw_f64le;
  throw CLI::ValidationError("--format", "expected csv or raw");
}

void print_diagnosis(const sios::DiagnosisResult& d) {
  const char* fault = "none";
  switch (d.fault) {
    case sios::FaultClass::inner_race: fault = "inner race"; break;
    case sios::FaultClass::outer_race: fault = "outer race"; break;
    case sios::FaultClass::ball: fault = "ball"; break;
    case sios::FaultClass::none: break;
  }
  std::cout << "verdict: " << sios::verdict_letter(d.verdict) << " (" << fault << ")\n";
  for (const auto& e : d.evidence)
    std::cout << "  " << std::setw(10) << e.frequency_hz << " Hz  N=" << std::setw(4)
              << e.harmonic_count << "  E=" << std::setw(12) << e.harmonic_power << "  "
              << e.label << '\n';
  if (!d.notes.empty()) std::cout << "notes: " << d.notes << '\n';
}

void print_pipeline_summary(const sios::PipelineResult& r) {
  std::cout << "record: " << r.signal.samples.size() << " samples @ "
            << r.signal.sampling_rate_hz << " Hz\n";
  std::cout << "spectrum: " << r.spectrum.size() << " bins, resolution "
            << r.spectrum.bin_spacing_hz << " Hz\n";
  std::cout << "peaks: " << r.peaks.peak_indices.size() << " ("
            << 100.0 * r.used_peak_fraction << "% of bins), l=" << r.used_half_window_bins
            << ", delta=" << r.used_power_offset << '\n';
  std::cout << "grid: [" << r.sios.grid.low_hz << ", " << r.sios.grid.high_hz << ") step "
            << r.sios.grid.spacing_hz << " Hz, " << r.sios.grid.size() << " components\n";
  if (r.diagnosis) print_diagnosis(*r.diagnosis);
}

// Derives the sampling rate from a stored spectrum (written for even-length
// records: the last bin is Nyquist).
double rate_from_spectrum(const sios::PowerSpectrum& spectrum) {
  return 2.0 * spectrum.frequency_hz.back();
}

sios::PeakSet peaks_from_flags(const sios::PowerSpectrum& spectrum, const PeakFlags& flags,
                               std::size_t& l_out, double& delta_out, double& fraction_out) {
  l_out = flags.l_bins ? *flags.l_bins
                       : sios::half_window_for_bandwidth(flags.l_hz, spectrum.bin_spacing_hz);
  if (flags.delta == "auto") {
    const sios::OffsetTuning tuning =
        sios::tune_power_offset(spectrum, l_out, flags.fraction_lo, flags.fraction_hi);
    delta_out = tuning.power_offset;
  } else {
    delta_out = std::stod(flags.delta);
  }
  sios::PeakSet peaks =
      sios::find_local_peaks(spectrum, sios::PeakSearchConfig{l_out, delta_out});
  fraction_out = sios::peak_fraction(peaks);
  return peaks;
}

void add_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand("simulate", "generate a synthetic fault record");
  auto params = std::make_shared<sios::SimulationParams>();
  auto out = std::make_shared<std::string>();
  auto format = std::make_shared<std::string>("csv");
  cmd->add_option("--decay", params->decay_coefficient, "envelope decay rate [1/s]")
      ->capture_default_str();
  cmd->add_option("--fm", params->fault_frequency_hz, "fault (impulse) frequency [Hz]")
      ->capture_default_str();
  cmd->add_option("--fres", params->resonant_frequency_hz, "resonant carrier [Hz]")
      ->capture_default_str();
  cmd->add_option("--fs", params->sampling_rate_hz, "sampling rate [Hz]")
      ->capture_default_str();
  cmd->add_option("--samples", params->num_samples, "record length")
      ->capture_default_str();
  cmd->add_option("--slip", params->slippage_bound, "onset jitter bound [samples]")
      ->capture_default_str();
  cmd->add_option("--snr", params->snr_db, "additive noise level [dB], omit for clean");
  cmd->add_option("--seed", params->rng_seed, "RNG seed")->capture_default_str();
  cmd->add_option("--out", *out, "output record path")->required();
  cmd->add_option("--format", *format, "csv or raw")->capture_default_str();

  cmd->callback([params, out, format] {
    const sios::TimeSeries signal = sios::simulate_bearing_signal(*params);
    if (parse_format(*format) == sios::InputFormat::csv)
      sios::write_timeseries_csv(signal, *out);
    else
      sios::write_timeseries_raw_f64le(signal, *out);
    sios::write_metadata_sidecar(
        *out, {{"sampling_rate_hz", std::to_string(params->sampling_rate_hz)},
               {"num_samples", std::to_string(params->num_samples)},
               {"rng_seed", std::to_string(params->rng_seed)},
               {"snr_db", params->snr_db ? std::to_string(*params->snr_db) : "none"}});
    std::cout << "wrote " << signal.samples.size() << " samples to " << *out << '\n';
  });
}

void add_spectrum(CLI::App& app) {
  auto* cmd = app.add_subcommand("spectrum", "estimate the power spectrum of a record");
  struct Args {
    std::string in, out, plot;
    std::string format = "csv";
    std::string window = "rectangular";
    double fs = 0.0;
    std::size_t segments = 1;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--in", a->in, "record path")->required();
  cmd->add_option("--format", a->format, "csv or raw")->capture_default_str();
  cmd->add_option("--fs", a->fs, "sampling rate [Hz]")->required();
  cmd->add_option("--segments", a->segments, "average this many non-overlapping segments")
      ->capture_default_str();
  cmd->add_option("--window", a->window, "rectangular or hann")->capture_default_str();
  cmd->add_option("--out", a->out, "spectrum CSV path")->required();
  cmd->add_option("--plot", a->plot, "also write an SVG plot here");

  cmd->callback([a] {
    const sios::TimeSeries signal =
        parse_format(a->format) == sios::InputFormat::csv
            ? sios::read_timeseries_csv(a->in, a->fs)
            : sios::read_timeseries_raw_f64le(a->in, a->fs);
    sios::Window window = sios::Window::rectangular;
    if (a->window == "hann")
      window = sios::Window::hann;
    else if (a->window != "rectangular")
      throw CLI::ValidationError("--window", "expected rectangular or hann");

    sios::PowerSpectrum spectrum;
    if (a->segments > 1) {
      std::vector<sios::PowerSpectrum> spectra;
      for (const sios::TimeSeries& segment : sios::split_segments(signal, a->segments))
        spectra.push_back(sios::power_spectrum(segment, window));
      spectrum = sios::average_spectra(spectra);
    } else {
      spectrum = sios::power_spectrum(signal, window);
    }
    sios::write_spectrum_csv(spectrum, a->out);
    if (!a->plot.empty())
      sios::svg::write_file(a->plot, sios::svg::spectrum_plot(spectrum, a->in));
    std::cout << "wrote " << spectrum.size() << " bins (resolution "
              << spectrum.bin_spacing_hz << " Hz) to " << a->out << '\n';
  });
}

void add_peaks(CLI::App& app) {
  auto* cmd = app.add_subcommand("peaks", "find local peaks in a stored spectrum");
  auto flags = std::make_shared<PeakFlags>();
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--spectrum", *in, "spectrum CSV path")->required();
  flags->attach(*cmd);
  cmd->add_option("--out", *out, "peaks CSV path")->required();

  cmd->callback([flags, in, out] {
    const sios::PowerSpectrum spectrum = sios::read_spectrum_csv(*in);
    std::size_t l = 0;
    double delta = 0.0;
    double fraction = 0.0;
    const sios::PeakSet peaks = peaks_from_flags(spectrum, *flags, l, delta, fraction);
    sios::write_peaks_csv(peaks, spectrum, *out);
    std::cout << "found " << peaks.peak_indices.size() << " peaks ("
              << 100.0 * fraction << "% of bins) with l=" << l << ", delta=" << delta
              << "; wrote " << *out << '\n';
  });
}

void add_sios(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "sios", "project spectrum peaks onto a frequency grid (structural information)");
  auto peak_flags = std::make_shared<PeakFlags>();
  auto grid_flags = std::make_shared<GridFlags>();
  struct Args {
    std::string in, out, plot;
    double fs = 0.0;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--spectrum", a->in, "spectrum CSV path")->required();
  cmd->add_option("--fs", a->fs, "sampling rate [Hz]; default: twice the last bin");
  peak_flags->attach(*cmd);
  grid_flags->attach(*cmd);
  cmd->add_option("--out", a->out, "SIOS CSV path")->required();
  cmd->add_option("--plot", a->plot, "also write an SVG plot here");

  cmd->callback([peak_flags, grid_flags, a] {
    const sios::PowerSpectrum spectrum = sios::read_spectrum_csv(a->in);
    const double fs = a->fs > 0.0 ? a->fs : rate_from_spectrum(spectrum);
    std::size_t l = 0;
    double delta = 0.0;
    double fraction = 0.0;
    const sios::PeakSet peaks = peaks_from_flags(spectrum, *peak_flags, l, delta, fraction);

    sios::PipelineConfig grid_cfg;
    grid_flags->apply(grid_cfg);
    const sios::FrequencyGrid grid =
        sios::make_grid(grid_cfg.grid_low_hz, grid_cfg.grid_high_hz,
                        grid_cfg.resolution_divisor, spectrum.bin_spacing_hz,
                        grid_cfg.grid_endpoint);
    const sios::Sios result =
        sios::construct_sios(peaks, spectrum, grid, fs, grid_cfg.sios_options);
    sios::write_sios_csv(result, a->out);
    if (!a->plot.empty())
      sios::svg::write_file(a->plot, sios::svg::sios_plot(result, a->in));
    std::cout << "projected " << peaks.peak_indices.size() << " peaks onto "
              << grid.size() << " components; wrote " << a->out << '\n';
  });
}

void add_diagnose(CLI::App& app) {
  auto* cmd = app.add_subcommand("diagnose", "classify a stored SIOS");
  auto bearing = std::make_shared<BearingFlags>();
  auto in = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--sios", *in, "SIOS CSV path")->required();
  bearing->attach(*cmd);
  cmd->add_option("--out", *out, "also write a key=value report here");

  cmd->callback([bearing, in, out] {
    const auto spec = bearing->resolve();
    if (!spec) throw CLI::RequiredError("--rpm or --fr");
    const sios::Sios stored = sios::read_sios_csv(*in);
    const sios::DiagnosisResult d =
        sios::classify(stored, *spec, bearing->significance);
    print_diagnosis(d);
    if (!out->empty()) sios::write_diagnosis(d, *out);
    g_status = sios::exit_code(d.verdict);
  });
}

void add_run(CLI::App& app) {
  auto* cmd = app.add_subcommand("run", "record in, verdict out: the whole pipeline");
  struct Args {
    std::string config;
    std::string in;
    std::string format = "csv";
    double fs = 0.0;
    bool simulate = false;
    sios::SimulationParams sim;
    std::optional<double> snr;
    std::size_t segments = 0;  // 0: keep config value
    std::string out_dir, prefix;
    bool plots = false;
  };
  auto a = std::make_shared<Args>();
  auto peak_flags = std::make_shared<PeakFlags>();
  auto grid_flags = std::make_shared<GridFlags>();
  auto bearing = std::make_shared<BearingFlags>();

  cmd->add_option("--config", a->config, "configuration file (flags override it)");
  cmd->add_option("--in", a->in, "record path");
  cmd->add_option("--format", a->format, "csv or raw")->capture_default_str();
  cmd->add_option("--fs", a->fs, "sampling rate of --in [Hz]");
  cmd->add_flag("--simulate", a->simulate, "simulate the record instead of reading one");
  cmd->add_option("--decay", a->sim.decay_coefficient, "simulation: decay [1/s]")
      ->capture_default_str();
  cmd->add_option("--fm", a->sim.fault_frequency_hz, "simulation: fault frequency [Hz]")
      ->capture_default_str();
  cmd->add_option("--fres", a->sim.resonant_frequency_hz, "simulation: carrier [Hz]")
      ->capture_default_str();
  cmd->add_option("--sim-fs", a->sim.sampling_rate_hz, "simulation: sampling rate [Hz]")
      ->capture_default_str();
  cmd->add_option("--samples", a->sim.num_samples, "simulation: record length")
      ->capture_default_str();
  cmd->add_option("--slip", a->sim.slippage_bound, "simulation: jitter bound [samples]")
      ->capture_default_str();
  cmd->add_option("--snr", a->snr, "simulation: noise level [dB]");
  cmd->add_option("--seed", a->sim.rng_seed, "simulation: RNG seed")->capture_default_str();
  cmd->add_option("--segments", a->segments, "average this many segments");
  peak_flags->attach(*cmd);
  grid_flags->attach(*cmd);
  bearing->attach(*cmd);
  cmd->add_option("--out-dir", a->out_dir, "write stage artifacts into this directory");
  cmd->add_option("--prefix", a->prefix, "artifact filename prefix");
  cmd->add_flag("--plots", a->plots, "also write SVG plots");

  cmd->callback([a, peak_flags, grid_flags, bearing, cmd] {
    sios::PipelineConfig cfg;
    if (!a->config.empty()) cfg = sios::pipeline_config_from(sios::Config::parse_file(a->config));

    if (a->simulate) {
      a->sim.snr_db = a->snr;
      cfg.simulation = a->sim;
    }
    if (!a->in.empty()) {
      cfg.simulation.reset();
      cfg.input_path = a->in;
      cfg.input_format = parse_format(a->format);
      if (a->fs > 0.0) cfg.input_rate_hz = a->fs;
    }
    if (a->segments > 0) cfg.segments = a->segments;

    // Only flags the user actually passed override the config file.
    const auto passed = [cmd](const std::string& name) {
      return cmd->count(name) > 0;
    };
    if (passed("--l-bins")) cfg.half_window_bins = *peak_flags->l_bins;
    if (passed("--l-hz")) cfg.bandwidth_hz = peak_flags->l_hz;
    if (passed("--delta")) {
      if (peak_flags->delta == "auto")
        cfg.power_offset.reset();
      else
        cfg.power_offset = std::stod(peak_flags->delta);
    }
    if (passed("--fraction-lo")) cfg.tune_fraction_lo = peak_flags->fraction_lo;
    if (passed("--fraction-hi")) cfg.tune_fraction_hi = peak_flags->fraction_hi;
    if (passed("--fl")) cfg.grid_low_hz = grid_flags->fl;
    if (passed("--fh")) cfg.grid_high_hz = grid_flags->fh;
    if (passed("--theta")) cfg.resolution_divisor = grid_flags->theta;
    if (passed("--inclusive")) cfg.grid_endpoint = sios::GridEndpoint::inclusive;
    if (passed("--literal-pseudocode")) cfg.sios_options.deduplicate = false;
    if (passed("--no-resolution-check")) cfg.sios_options.enforce_resolution = false;
    if (const auto spec = bearing->resolve()) cfg.bearing = spec;
    if (passed("--top-m")) cfg.significance.top_m = bearing->significance.top_m;
    if (passed("--dominance-ratio"))
      cfg.significance.dominance_ratio = bearing->significance.dominance_ratio;
    if (passed("--match-tol"))
      cfg.significance.match_tol_rel = bearing->significance.match_tol_rel;
    if (!a->out_dir.empty()) cfg.output_dir = a->out_dir;
    if (!a->prefix.empty()) cfg.output_prefix = a->prefix;
    if (a->plots) cfg.emit_plots = true;

    const sios::PipelineResult result = sios::run_pipeline(cfg);
    print_pipeline_summary(result);
    if (result.diagnosis) g_status = sios::exit_code(result.diagnosis->verdict);
  });
}

void add_reproduce(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "reproduce", "re-run the published benchmark records against a manifest");
  struct Args {
    std::string manifest = "data/reproduce_manifest.csv";
    std::string data_root;
    std::string out_dir;
    std::string only;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--manifest", a->manifest, "manifest CSV")->capture_default_str();
  cmd->add_option("--data-root", a->data_root,
                  "directory holding the converted records (default: $SIOS_DATA_ROOT)");
  cmd->add_option("--out-dir", a->out_dir, "write per-record artifacts here");
  cmd->add_option("--only", a->only, "run a single record id");

  cmd->callback([a] {
    std::string root = a->data_root;
    if (root.empty())
      if (const char* env = std::getenv("SIOS_DATA_ROOT")) root = env;
    if (root.empty()) {
      std::cout << "no data root given (--data-root or SIOS_DATA_ROOT); every record "
                   "will be reported as missing\n";
    }

    const std::vector<sios::ManifestRow> rows = sios::read_manifest(a->manifest);
    std::size_t ran = 0;
    std::size_t matched = 0;
    std::size_t skipped = 0;
    std::vector<std::string> mismatches;

    for (const sios::ManifestRow& row : rows) {
      if (!a->only.empty() && row.record_id != a->only) continue;
      const std::filesystem::path path = std::filesystem::path(root) / row.file;
      if (root.empty() || !std::filesystem::exists(path)) {
        std::cout << std::left << std::setw(12) << row.record_id << " SKIP (missing "
                  << path.string() << ")\n";
        ++skipped;
        continue;
      }

      sios::PipelineConfig cfg;
      cfg.input_path = path.string();
      cfg.input_format = sios::InputFormat::csv;
      cfg.input_rate_hz = row.sampling_rate_hz;
      cfg.bandwidth_hz = row.bandwidth_hz;
      cfg.power_offset = row.power_offset;
      cfg.grid_low_hz = row.grid_low_hz;
      cfg.grid_high_hz = row.grid_high_hz;
      cfg.resolution_divisor = row.resolution_divisor;
      sios::BearingSpec spec;
      spec.shaft_freq_hz = row.shaft_rpm / 60.0;
      cfg.bearing = spec;
      if (!a->out_dir.empty()) {
        cfg.output_dir = a->out_dir;
        cfg.output_prefix = row.record_id;
      }

      const sios::PipelineResult result = sios::run_pipeline(cfg);
      ++ran;

      std::string status = "ok";
      const sios::DiagnosisResult& d = *result.diagnosis;
      if (!row.expected_verdict.empty() &&
          std::string(1, sios::verdict_letter(d.verdict)) != row.expected_verdict)
        status = "verdict " + std::string(1, sios::verdict_letter(d.verdict)) +
                 " != expected " + row.expected_verdict;
      if (status == "ok" && !row.expected_fault.empty()) {
        const char* fault = d.fault == sios::FaultClass::inner_race   ? "inner"
                            : d.fault == sios::FaultClass::outer_race ? "outer"
                            : d.fault == sios::FaultClass::ball       ? "ball"
                                                                      : "none";
        if (row.expected_fault != fault)
          status = std::string("fault ") + fault + " != expected " + row.expected_fault;
      }
      if (status == "ok" && row.expected_dominant_hz) {
        const sios::Significance sig =
            sios::find_significant(result.sios, cfg.significance);
        if (sig.dominant.empty()) {
          status = "no dominant component";
        } else {
          const double got = sig.dominant.front().frequency_hz;
          if (std::abs(got - *row.expected_dominant_hz) >
              0.01 * *row.expected_dominant_hz)
            status = "dominant " + std::to_string(got) + " Hz != expected " +
                     std::to_string(*row.expected_dominant_hz) + " Hz";
        }
      }

      std::cout << std::left << std::setw(12) << row.record_id << ' '
                << sios::verdict_letter(d.verdict) << "  " << status << '\n';
      if (status == "ok")
        ++matched;
      else
        mismatches.push_back(row.record_id + ": " + status);
    }

    std::cout << "reproduction: " << matched << '/' << ran << " matched, " << skipped
              << " skipped (missing data)\n";
    for (const std::string& m : mismatches) std::cout << "  mismatch " << m << '\n';
    g_status = mismatches.empty() ? 0 : 1;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectrum-structure search and rolling-bearing fault diagnosis"};
  app.require_subcommand(1);
  add_simulate(app);
  add_spectrum(app);
  add_peaks(app);
  add_sios(app);
  add_diagnose(app);
  add_run(app);
  add_reproduce(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  } catch (const sios::FileOpenError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 66;
  } catch (const sios::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 65;
  } catch (const sios::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 74;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 70;
  }
  return g_status;
}
