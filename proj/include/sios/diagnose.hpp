#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sios/types.hpp"

namespace sios {

/// Defect frequencies as multiples of the shaft rotation frequency. The
/// defaults are the 6205-2RS drive-end geometry of the common benchmark rig.
/// The lock multipliers are where each family settles when roller slip locks
/// the defect rate onto a near multiple of 0.2x shaft speed; real records
/// show lines at either the kinematic or the locked position, so matching
/// accepts both.
struct BearingSpec {
  double shaft_freq_hz = 0.0;
  double bpfo_mult = 3.585;   // outer-race pass frequency
  double bpfi_mult = 5.415;   // inner-race pass frequency
  double ftf_mult = 0.3983;   // cage (fundamental train) frequency
  double bsf_mult = 2.357;    // ball spin frequency
  double bpfo_lock_mult = 3.6;
  double bpfi_lock_mult = 5.4;
  double ftf_lock_mult = 0.4;
  double bsf_lock_mult = 2.4;
};

/// The ball-fault pattern: four distinct spectral lines at
/// {3.6, 3.611, 5.4, 5.416} x shaft frequency. Outer- and inner-race
/// signatures each graze a pair of these, which is why detection demands
/// all four on separate components.
std::array<double, 4> ball_fault_pattern_hz(const BearingSpec& spec);

enum class FaultLabel { bpfo, bpfi, ftf, bsf_x2, bfp };

struct LabeledFrequency {
  FaultLabel label;
  double frequency_hz;
};

/// First-order characteristic frequencies (kinematic positions) plus the
/// ball-fault-pattern lines, for reporting and plot markers.
std::vector<LabeledFrequency> characteristic_frequencies(const BearingSpec& spec);

struct SignificanceConfig {
  std::size_t top_m = 8;         // rank cutoff per index
  double dominance_ratio = 2.0;  // anchor must lead a rival family by this in E
  double match_tol_rel = 0.01;   // relative frequency matching tolerance
};

struct RankedComponent {
  std::size_t index = 0;
  double frequency_hz = 0.0;
  int count = 0;      // N at this component
  double power = 0.0; // E at this component
};

struct Significance {
  std::vector<RankedComponent> by_count;    // top-m by N, descending
  std::vector<RankedComponent> by_power;    // top-m by E, descending
  std::vector<RankedComponent> dominant;    // significant in both, by E desc
  std::vector<RankedComponent> power_only;  // likely a lone discrete component
  std::vector<RankedComponent> count_only;  // likely noise-built
};

/// Ranks grid components by harmonic count and harmonic power. Zero-valued
/// components are never significant; rank ties break toward lower frequency.
Significance find_significant(const Sios& sios, const SignificanceConfig& config);

enum class FaultClass { none, inner_race, outer_race, ball };
enum class Verdict { yes, partial, none };

struct MatchedComponent {
  std::size_t component_index = 0;
  double frequency_hz = 0.0;
  int harmonic_count = 0;
  double harmonic_power = 0.0;
  bool matched = false;
  std::string label;  // e.g. "BPFI k=1 @ 162.18 Hz", or "unmatched"
};

struct DiagnosisResult {
  FaultClass fault = FaultClass::none;
  Verdict verdict = Verdict::none;
  std::vector<MatchedComponent> evidence;  // dominant + rule-matched components
  bool ball_pattern_found = false;
  std::string notes;
};

struct BfpMatch {
  bool found = false;        // all four lines on pairwise-distinct components
  int targets_matched = 0;   // size of the best injective assignment
  std::array<double, 4> matched_hz{};  // 0 where unmatched
};

/// Searches the significant components (union of both rankings) for the
/// ball fault pattern. Each of the four lines must claim its own component;
/// a single component within tolerance of two lines cannot stand in for
/// both.
BfpMatch detect_bfp(const Sios& sios, const BearingSpec& spec,
                    const SignificanceConfig& config);

/// Applies the fault rules to the structural information:
///   ball  — ball fault pattern plus a 2xBSF line plus an FTF harmonic, all
///           on distinct significant components; or 2xBSF itself dominant.
///   inner — the top dominant component is a BPFI harmonic.
///   outer — the top dominant component is a BPFO harmonic.
/// Ball is evaluated first: ball records place lines within a hair of both
/// BPFO and BPFI, so the more specific pattern must get the first claim —
/// even the bare four-line pattern outranks the anchor rule (as a partial),
/// since race faults cannot put distinct lines in both pattern pair regions.
/// A clear-but-contested anchor (a rival family's dominant component at
/// comparable power) downgrades yes to partial, as does family evidence
/// that is significant without being dominant. No match at all is none.
/// Throws when the grid covers no characteristic frequency at all.
DiagnosisResult classify(const Sios& sios, const BearingSpec& spec,
                         const SignificanceConfig& config = {});

/// Y / P / N.
char verdict_letter(Verdict verdict);

/// Pipeline exit status: yes 0, partial 10, none 20.
int exit_code(Verdict verdict);

}  // namespace sios
