#pragma once

#include <cstdint>
#include <optional>

#include "sios/types.hpp"

namespace sios {

/// Synthetic bearing-fault record: a train of exponentially decaying
/// resonance bursts repeating at the fault frequency, each onset jittered by
/// a uniform random slippage, with optional additive white Gaussian noise.
struct SimulationParams {
  double decay_coefficient = 900.0;       // envelope decay rate (1/s)
  double fault_frequency_hz = 110.0;      // impulse repetition rate
  double resonant_frequency_hz = 3900.0;  // carrier excited by each impact
  double sampling_rate_hz = 12000.0;
  std::size_t num_samples = std::size_t{1} << 15;
  double slippage_bound = 8.0;            // onset jitter ~ U[-b, +b], in samples
  std::optional<double> snr_db;           // empty: no added noise
  std::uint64_t rng_seed = 0;
};

/// Throws std::invalid_argument when a parameter is out of range (rates must
/// be positive, the carrier must lie below Nyquist, the jitter bound must be
/// non-negative and smaller than the impulse period).
void validate(const SimulationParams& params);

/// Generates the record. Deterministic: equal params give bit-identical
/// output. Impulse onsets falling beyond the record are dropped; an onset
/// jittered before sample 0 contributes only its in-range tail.
TimeSeries simulate_bearing_signal(const SimulationParams& params);

/// Adds zero-mean white Gaussian noise scaled so that
/// 10*log10(signal power / noise power) = snr_db, powers being mean squared
/// amplitudes. snr_db = +infinity returns the signal unchanged; an all-zero
/// signal cannot be scaled against and throws.
TimeSeries add_gaussian_noise(const TimeSeries& signal, double snr_db,
                              std::uint64_t rng_seed);

}  // namespace sios
