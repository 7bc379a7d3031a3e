// Acceptance gate: eight checks, one [PASS]/[FAIL]/[SKIP] line each.
// The process exit code is the number of failed checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "sios/diagnose.hpp"
#include "sios/ingest.hpp"
#include "sios/peaksearch.hpp"
#include "sios/pipeline.hpp"
#include "sios/reference.hpp"
#include "sios/simulate.hpp"
#include "sios/sios.hpp"
#include "sios/spectrum.hpp"
#include "sios/types.hpp"

#ifndef SIOS_REPO_ROOT
#define SIOS_REPO_ROOT "."
#endif

namespace {

int g_failures = 0;

void report(bool pass, const std::string& text) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << text << '\n';
  if (!pass) ++g_failures;
}

void report_skip(const std::string& text) { std::cout << "[SKIP] " << text << '\n'; }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

bool close_to(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

std::string fixed1(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(1) << v;
  return ss.str();
}

// Index of the largest entry; ties go to the lower index.
std::size_t argmax_int(const std::vector<int>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[best]) best = i;
  return best;
}

// --- 1: resolution arithmetic at the worked operating point -----------------

void criterion_1() {
  const double ds = 12000.0 / 32768.0;
  const sios::ResolutionCheck rc = sios::check_resolution_condition(12000.0, 100.0, ds);
  std::ostringstream msg;
  msg << "criterion 1: 12 kHz / 2^15 samples at a 100 Hz grid start: bin spacing "
      << ds << " Hz, bound " << rc.bound_hz << " Hz, margin " << rc.margin;
  const bool ok = rc.pass && close_to(ds, 0.3662, 0.00005) &&
                  close_to(rc.bound_hz, 1.667, 0.0005) &&
                  close_to(rc.margin, 0.2197, 0.00005);
  report(ok, msg.str());
}

// --- 2: the simulated fault frequency tops N and E ---------------------------

void criterion_2() {
  Timer timer;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    sios::PipelineConfig cfg;
    sios::SimulationParams sim;  // 110 Hz fault train at 12 kHz, -10 dB noise
    sim.snr_db = -10.0;
    sim.rng_seed = seed;
    sim.num_samples = std::size_t{1} << 25;
    cfg.simulation = sim;
    // At -10 dB every harmonic line sits below the single-window noise floor,
    // and the random slippage smears all but the first few multiples of
    // 110 Hz into the broadband pedestal. Averaging 1024 windows shrinks the
    // noise spread ~32x so the surviving lines stand well proud, and the
    // tight peak-fraction band admits only those few bins.
    cfg.segments = 1024;
    cfg.tune_fraction_lo = 0.00003;
    cfg.tune_fraction_hi = 0.0002;
    const sios::PipelineResult result = sios::run_pipeline(cfg);
    const sios::Sios& s = result.sios;
    const double at_n = s.grid.components[argmax_int(s.harmonic_count)];
    const double at_e = s.grid.components[argmax(s.harmonic_power)];
    if (std::abs(at_n - 110.0) <= 0.5 && std::abs(at_e - 110.0) <= 0.5) ++hits;
  }
  const double elapsed = timer.seconds();
  std::ostringstream msg;
  msg << "criterion 2: 110 Hz fault recovered as max-N and max-E on " << hits
      << "/10 noisy simulated records (-10 dB, 1024 averaged windows) in "
      << fixed1(elapsed) << " s";
  report(hits >= 9 && elapsed < 30.0, msg.str());
}

// --- 3: parallel construction equals the serial enumeration ------------------

void criterion_3() {
  Timer timer;
  std::mt19937_64 rng(0x51a5ULL);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const genutil::Instance inst = genutil::random_instance(rng);
    sios::SiosOptions options;
    options.deduplicate = (trial % 2 == 0);
    const sios::Sios a = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                              inst.sampling_rate_hz, options);
    const sios::Sios b = sios::reference::construct_sios(
        inst.peaks, inst.spectrum, inst.grid, inst.sampling_rate_hz, options);
    bool ok = a.harmonic_count == b.harmonic_count;
    for (std::size_t i = 0; ok && i < inst.grid.size(); ++i) {
      if (std::abs(a.harmonic_power[i] - b.harmonic_power[i]) >
          1e-12 * std::max(1.0, std::abs(b.harmonic_power[i])))
        ok = false;
      if ((a.harmonic_count[i] == 0) != (a.harmonic_power[i] == 0.0)) ok = false;
    }
    if (!ok) ++bad;
  }
  const double elapsed = timer.seconds();
  std::ostringstream msg;
  msg << "criterion 3: parallel and serial construction agree on " << (200 - bad)
      << "/200 randomized instances (N exact, E to 1e-12 relative) in "
      << fixed1(elapsed) << " s";
  report(bad == 0 && elapsed < 60.0, msg.str());
}

// --- 4: grid-aligned harmonic combs are counted completely -------------------

void criterion_4() {
  std::mt19937_64 rng(0x4a11ULL);
  int bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const genutil::HarmonicInstance h = genutil::harmonic_instance(rng, true);
    const genutil::Instance& inst = h.instance;
    const sios::Sios s = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                              inst.sampling_rate_hz);
    const bool ok =
        s.harmonic_count[h.target_component] == static_cast<int>(h.harmonics) &&
        close_to(s.harmonic_power[h.target_component], h.expected_power,
                 1e-12 * h.expected_power);
    if (!ok) ++bad;
  }
  report(bad == 0, "criterion 4: aligned harmonic combs fully counted on " +
                       std::to_string(50 - bad) + "/50 draws");
}

// --- 5: off-lattice fundamentals keep every harmonic -------------------------

void criterion_5() {
  std::mt19937_64 rng(0x4a12ULL);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const genutil::HarmonicInstance h = genutil::harmonic_instance(rng, false);
    const genutil::Instance& inst = h.instance;
    const sios::Sios s = sios::construct_sios(inst.peaks, inst.spectrum, inst.grid,
                                              inst.sampling_rate_hz);
    const bool ok =
        s.harmonic_count[h.target_component] == static_cast<int>(h.harmonics) &&
        close_to(s.harmonic_power[h.target_component], h.expected_power,
                 1e-12 * h.expected_power);
    if (!ok) ++bad;
  }
  report(bad == 0,
         "criterion 5: off-lattice fundamentals project every harmonic onto their "
         "component on " +
             std::to_string(100 - bad) + "/100 draws");
}

// --- 6: peak-search strictness, definition, offset monotonicity --------------

void criterion_6() {
  std::mt19937_64 rng(0x6eacULL);
  bool ok = true;

  // Plateaus and constant spectra never produce peaks; an isolated strict
  // maximum above its local average does.
  sios::PowerSpectrum flat;
  flat.bin_spacing_hz = 1.0;
  flat.frequency_hz.resize(64);
  flat.power.assign(64, 0.1);
  for (std::size_t k = 0; k < 64; ++k) flat.frequency_hz[k] = static_cast<double>(k);
  sios::PowerSpectrum plateau = flat;
  plateau.power[30] = plateau.power[31] = 5.0;
  plateau.power[40] = 5.0;
  const sios::PeakSet p =
      sios::find_local_peaks(plateau, sios::PeakSearchConfig{3, 0.0});
  if (p.indicator[30] || p.indicator[31] || !p.indicator[40]) ok = false;
  if (!sios::find_local_peaks(flat, sios::PeakSearchConfig{3, 0.0})
           .peak_indices.empty())
    ok = false;

  for (int trial = 0; ok && trial < 20; ++trial) {
    sios::PowerSpectrum s;
    const std::size_t bins = 512;
    s.bin_spacing_hz = genutil::uniform(rng, 0.1, 2.0);
    s.frequency_hz.resize(bins);
    s.power.resize(bins);
    for (std::size_t k = 0; k < bins; ++k) {
      s.frequency_hz[k] = static_cast<double>(k) * s.bin_spacing_hz;
      s.power[k] = genutil::uniform(rng, 0.0, 1.0);
    }
    const std::size_t l = genutil::pick(rng, 1, 8);
    const double d1 = genutil::uniform(rng, 0.0, 0.2);
    const double d2 = d1 + genutil::uniform(rng, 0.0, 0.2);
    const sios::PeakSet p1 = sios::find_local_peaks(s, sios::PeakSearchConfig{l, d1});
    const sios::PeakSet p2 = sios::find_local_peaks(s, sios::PeakSearchConfig{l, d2});

    for (std::size_t k = 0; k < bins; ++k) {
      // Raising the offset never adds a peak.
      if (p2.indicator[k] && !p1.indicator[k]) ok = false;
      // The acceptance definition, re-evaluated directly.
      if (k < l || k + l >= bins) {
        if (p1.indicator[k]) ok = false;
        continue;
      }
      double sum = 0.0;
      for (std::size_t i = k - l; i <= k + l; ++i) sum += s.power[i];
      const bool expected = k > 0 && k + 1 < bins && s.power[k] > s.power[k - 1] &&
                            s.power[k] > s.power[k + 1] &&
                            s.power[k] > sum / static_cast<double>(2 * l + 1) + d1;
      if (static_cast<bool>(p1.indicator[k]) != expected) ok = false;
    }
    if (sios::peak_fraction(p2) > sios::peak_fraction(p1)) ok = false;
  }

  report(ok,
         "criterion 6: peak search is strict on plateaus, matches its definition "
         "bin-for-bin, and is monotone in the offset (20 random spectra)");
}

// --- 7: the suggested offset keeps the peak fraction in band (soft) ----------

void criterion_7() {
  const double lo = 0.005;
  const double hi = 0.03;
  int missed = 0;
  bool tuned_ok = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    sios::SimulationParams sim;
    sim.snr_db = -10.0;
    sim.rng_seed = seed;
    sios::PowerSpectrum spectrum =
        sios::power_spectrum(sios::simulate_bearing_signal(sim));
    // The suggested offset presumes a unit-scale spectrum.
    const double peak = *std::max_element(spectrum.power.begin(), spectrum.power.end());
    for (double& v : spectrum.power) v /= peak;
    const std::size_t l =
        sios::half_window_for_bandwidth(114.0, spectrum.bin_spacing_hz);
    const double fixed = sios::peak_fraction(
        sios::find_local_peaks(spectrum, sios::PeakSearchConfig{l, 0.0002}));
    if (fixed < lo || fixed > hi) {
      ++missed;
      const sios::OffsetTuning tuning = sios::tune_power_offset(spectrum, l, lo, hi);
      if (tuning.fraction < lo || tuning.fraction > hi) tuned_ok = false;
    }
  }
  std::ostringstream msg;
  if (missed == 0) {
    msg << "criterion 7: offset 0.0002 keeps the peak fraction in [0.5%, 3%] on 5/5 "
           "unit-scale simulated spectra";
    report(true, msg.str());
  } else {
    msg << "criterion 7: offset 0.0002 missed the [0.5%, 3%] band on " << missed
        << "/5 spectra; automatic tuning restores it (soft check, notice only)";
    report(tuned_ok, msg.str());
  }
}

// --- 8: benchmark records reproduce the published table ----------------------

const char* fault_name(sios::FaultClass fault) {
  switch (fault) {
    case sios::FaultClass::inner_race: return "inner";
    case sios::FaultClass::outer_race: return "outer";
    case sios::FaultClass::ball: return "ball";
    case sios::FaultClass::none: break;
  }
  return "none";
}

void criterion_8() {
  const char* root_env = std::getenv("SIOS_DATA_ROOT");
  if (root_env == nullptr || std::string(root_env).empty()) {
    report_skip(
        "criterion 8: SIOS_DATA_ROOT is not set; convert the benchmark records "
        "(docs/convert_cwru.py, docs/convert_ims.py) and point SIOS_DATA_ROOT at "
        "them to run the reproduction");
    return;
  }
  const std::filesystem::path root(root_env);

  std::string manifest_path = std::string(SIOS_REPO_ROOT) + "/data/reproduce_manifest.csv";
  if (const char* env = std::getenv("SIOS_MANIFEST")) manifest_path = env;

  std::vector<sios::ManifestRow> rows;
  try {
    rows = sios::read_manifest(manifest_path);
  } catch (const std::exception& e) {
    report(false, std::string("criterion 8: cannot read manifest: ") + e.what());
    return;
  }

  std::size_t ran = 0;
  std::size_t missing = 0;
  std::vector<std::string> mismatches;
  for (const sios::ManifestRow& row : rows) {
    const std::filesystem::path path = root / row.file;
    if (!std::filesystem::exists(path)) {
      ++missing;
      continue;
    }

    sios::PipelineConfig cfg;
    cfg.input_path = path.string();
    cfg.input_rate_hz = row.sampling_rate_hz;
    cfg.bandwidth_hz = row.bandwidth_hz;
    cfg.power_offset = row.power_offset;
    cfg.grid_low_hz = row.grid_low_hz;
    cfg.grid_high_hz = row.grid_high_hz;
    cfg.resolution_divisor = row.resolution_divisor;
    sios::BearingSpec spec;
    spec.shaft_freq_hz = row.shaft_rpm / 60.0;
    cfg.bearing = spec;

    sios::PipelineResult result;
    try {
      result = sios::run_pipeline(cfg);
    } catch (const std::exception& e) {
      mismatches.push_back(row.record_id + ": " + e.what());
      ++ran;
      continue;
    }
    ++ran;

    const sios::DiagnosisResult& d = *result.diagnosis;
    std::string status;
    if (!row.expected_verdict.empty() &&
        std::string(1, sios::verdict_letter(d.verdict)) != row.expected_verdict)
      status = "verdict " + std::string(1, sios::verdict_letter(d.verdict)) +
               " != " + row.expected_verdict;
    if (status.empty() && !row.expected_fault.empty() &&
        row.expected_fault != fault_name(d.fault))
      status = std::string("fault ") + fault_name(d.fault) + " != " + row.expected_fault;
    if (status.empty() && row.expected_dominant_hz) {
      const sios::Significance sig = sios::find_significant(result.sios, cfg.significance);
      if (sig.dominant.empty())
        status = "no dominant component";
      else if (std::abs(sig.dominant.front().frequency_hz - *row.expected_dominant_hz) >
               0.01 * *row.expected_dominant_hz)
        status = "dominant " + std::to_string(sig.dominant.front().frequency_hz) +
                 " != " + std::to_string(*row.expected_dominant_hz);
    }
    if (status.empty() && row.record_id == "510") {
      // The 246 Hz line carries power but few harmonics; the count index
      // must keep it out of the dominant set.
      for (const sios::RankedComponent& c :
           sios::find_significant(result.sios, cfg.significance).dominant)
        if (std::abs(c.frequency_hz - 246.0) <= 2.46)
          status = "246 Hz entered the dominant set";
    }
    if (!status.empty()) mismatches.push_back(row.record_id + ": " + status);
  }

  if (ran == 0) {
    report_skip("criterion 8: no record files found under " + root.string() + " (" +
                std::to_string(missing) + " manifest rows); reproduction skipped");
    return;
  }

  std::ostringstream msg;
  msg << "criterion 8: " << (ran - mismatches.size()) << "/" << ran
      << " supplied records match the published verdicts and dominant components";
  if (missing > 0) msg << " (" << missing << " records not supplied)";
  for (std::size_t i = 0; i < mismatches.size() && i < 3; ++i)
    msg << "; mismatch " << mismatches[i];
  report(mismatches.empty(), msg.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::cout << "acceptance: " << (g_failures == 0 ? "all criteria hold" : "FAILURES")
            << " (" << g_failures << " failed)\n";
  return g_failures;
}
