#include "sios/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sios {

namespace {

void validate_spec(const BearingSpec& s) {
  if (!(s.shaft_freq_hz > 0.0))
    throw std::invalid_argument("diagnose: shaft_freq_hz must be positive");
  for (double m : {s.bpfo_mult, s.bpfi_mult, s.ftf_mult, s.bsf_mult,
                   s.bpfo_lock_mult, s.bpfi_lock_mult, s.ftf_lock_mult,
                   s.bsf_lock_mult})
    if (!(m > 0.0))
      throw std::invalid_argument("diagnose: characteristic multipliers must be positive");
}

void validate_config(const SignificanceConfig& c) {
  if (c.top_m < 1)
    throw std::invalid_argument("diagnose: top_m must be at least 1");
  if (!(c.dominance_ratio >= 1.0))
    throw std::invalid_argument("diagnose: dominance_ratio must be at least 1");
  if (!(c.match_tol_rel > 0.0))
    throw std::invalid_argument("diagnose: match_tol_rel must be positive");
}

struct Family {
  FaultLabel label;
  const char* name;
  double kinematic_hz;  // first harmonic
  double lock_hz;       // first harmonic, slip-locked position
};

std::vector<Family> make_families(const BearingSpec& s) {
  const double fr = s.shaft_freq_hz;
  return {
      {FaultLabel::bpfo, "BPFO", s.bpfo_mult * fr, s.bpfo_lock_mult * fr},
      {FaultLabel::bpfi, "BPFI", s.bpfi_mult * fr, s.bpfi_lock_mult * fr},
      {FaultLabel::ftf, "FTF", s.ftf_mult * fr, s.ftf_lock_mult * fr},
      {FaultLabel::bsf_x2, "2xBSF", 2.0 * s.bsf_mult * fr, 2.0 * s.bsf_lock_mult * fr},
  };
}

struct FamilyMatch {
  bool ok = false;
  long long order = 0;
  double target_hz = 0.0;
};

FamilyMatch match_harmonic(double freq_hz, double base_hz, double tol) {
  const long long k = std::llround(freq_hz / base_hz);
  if (k < 1) return {};
  const double target = static_cast<double>(k) * base_hz;
  if (std::abs(freq_hz - target) <= tol * target) return {true, k, target};
  return {};
}

FamilyMatch match_family(double freq_hz, const Family& fam, double tol) {
  const FamilyMatch kin = match_harmonic(freq_hz, fam.kinematic_hz, tol);
  if (kin.ok) return kin;
  return match_harmonic(freq_hz, fam.lock_hz, tol);
}

// Kuhn's augmenting-path matching: slots (few) against component indices.
// Returns the size of a maximum injective assignment and fills, per slot,
// the component it got (or npos).
class SlotMatcher {
 public:
  explicit SlotMatcher(std::vector<std::vector<std::size_t>> slots)
      : slots_(std::move(slots)) {}

  int solve() {
    owner_.clear();
    int matched = 0;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      std::set<std::size_t> visited;
      if (augment(s, visited)) ++matched;
    }
    return matched;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<std::size_t> assignment() const {
    std::vector<std::size_t> out(slots_.size(), npos);
    for (const auto& [component, slot] : owner_) out[slot] = component;
    return out;
  }

 private:
  bool augment(std::size_t slot, std::set<std::size_t>& visited) {
    for (std::size_t component : slots_[slot]) {
      if (!visited.insert(component).second) continue;
      const auto it = owner_.find(component);
      if (it == owner_.end() || augment(it->second, visited)) {
        owner_[component] = slot;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> slots_;
  std::map<std::size_t, std::size_t> owner_;  // component -> slot
};

std::vector<RankedComponent> significant_union(const Significance& sig) {
  std::vector<RankedComponent> out = sig.by_power;
  for (const auto& rc : sig.by_count) {
    const bool present = std::any_of(out.begin(), out.end(), [&](const RankedComponent& x) {
      return x.index == rc.index;
    });
    if (!present) out.push_back(rc);
  }
  std::sort(out.begin(), out.end(), [](const RankedComponent& a, const RankedComponent& b) {
    if (a.power != b.power) return a.power > b.power;
    if (a.count != b.count) return a.count > b.count;
    return a.frequency_hz < b.frequency_hz;
  });
  return out;
}

std::string format_hz(double hz) {
  std::ostringstream os;
  os.precision(6);
  os << hz;
  return os.str();
}

}  // namespace

std::array<double, 4> ball_fault_pattern_hz(const BearingSpec& spec) {
  validate_spec(spec);
  // The 18th and 27th harmonics of 0.2x and 0.2006x shaft speed: two pairs
  // of near-coincident lines flanking the locked BPFO and BPFI positions.
  const double fr = spec.shaft_freq_hz;
  return {3.6 * fr, 3.611 * fr, 5.4 * fr, 5.416 * fr};
}

std::vector<LabeledFrequency> characteristic_frequencies(const BearingSpec& spec) {
  validate_spec(spec);
  const double fr = spec.shaft_freq_hz;
  std::vector<LabeledFrequency> out = {
      {FaultLabel::ftf, spec.ftf_mult * fr},
      {FaultLabel::bsf_x2, 2.0 * spec.bsf_mult * fr},
      {FaultLabel::bpfo, spec.bpfo_mult * fr},
      {FaultLabel::bpfi, spec.bpfi_mult * fr},
  };
  for (double hz : ball_fault_pattern_hz(spec)) out.push_back({FaultLabel::bfp, hz});
  return out;
}

Significance find_significant(const Sios& sios, const SignificanceConfig& config) {
  validate_config(config);
  const std::size_t n = sios.grid.size();
  if (n == 0 || sios.harmonic_count.size() != n || sios.harmonic_power.size() != n)
    throw std::invalid_argument("find_significant: malformed SIOS");

  const auto make = [&](std::size_t i) {
    return RankedComponent{i, sios.grid.components[i], sios.harmonic_count[i],
                           sios.harmonic_power[i]};
  };

  Significance out;
  for (std::size_t i = 0; i < n; ++i) {
    if (sios.harmonic_count[i] > 0) out.by_count.push_back(make(i));
    if (sios.harmonic_power[i] > 0.0) out.by_power.push_back(make(i));
  }
  std::sort(out.by_count.begin(), out.by_count.end(),
            [](const RankedComponent& a, const RankedComponent& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.frequency_hz < b.frequency_hz;
            });
  std::sort(out.by_power.begin(), out.by_power.end(),
            [](const RankedComponent& a, const RankedComponent& b) {
              if (a.power != b.power) return a.power > b.power;
              return a.frequency_hz < b.frequency_hz;
            });
  if (out.by_count.size() > config.top_m) out.by_count.resize(config.top_m);
  if (out.by_power.size() > config.top_m) out.by_power.resize(config.top_m);

  const auto in = [](const std::vector<RankedComponent>& v, std::size_t index) {
    return std::any_of(v.begin(), v.end(),
                       [&](const RankedComponent& rc) { return rc.index == index; });
  };
  for (const auto& rc : out.by_power) {
    if (in(out.by_count, rc.index))
      out.dominant.push_back(rc);
    else
      out.power_only.push_back(rc);
  }
  for (const auto& rc : out.by_count)
    if (!in(out.by_power, rc.index)) out.count_only.push_back(rc);
  // by_power is already power-descending, so dominant inherits that order.
  return out;
}

BfpMatch detect_bfp(const Sios& sios, const BearingSpec& spec,
                    const SignificanceConfig& config) {
  validate_spec(spec);
  const Significance sig = find_significant(sios, config);
  const std::vector<RankedComponent> candidates = significant_union(sig);
  const std::array<double, 4> targets = ball_fault_pattern_hz(spec);

  std::vector<std::vector<std::size_t>> slots(4);
  std::map<std::size_t, double> freq_of;
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (const auto& rc : candidates)
      if (std::abs(rc.frequency_hz - targets[t]) <= config.match_tol_rel * targets[t]) {
        slots[t].push_back(rc.index);
        freq_of[rc.index] = rc.frequency_hz;
      }

  SlotMatcher matcher(std::move(slots));
  BfpMatch out;
  out.targets_matched = matcher.solve();
  out.found = out.targets_matched == 4;
  const auto assigned = matcher.assignment();
  for (std::size_t t = 0; t < 4; ++t)
    if (assigned[t] != SlotMatcher::npos) out.matched_hz[t] = freq_of[assigned[t]];
  return out;
}

namespace {

// Shared state for assembling a DiagnosisResult.
class RuleEngine {
 public:
  RuleEngine(const Sios& sios, const BearingSpec& spec, const SignificanceConfig& config)
      : sios_(sios),
        spec_(spec),
        config_(config),
        families_(make_families(spec)),
        sig_(find_significant(sios, config)),
        union_(significant_union(sig_)),
        bfp_(detect_bfp(sios, spec, config)) {}

  DiagnosisResult run() {
    check_grid_coverage();
    annotate_index_disagreements();

    DiagnosisResult result;
    result.ball_pattern_found = bfp_.found;

    if (union_.empty()) {
      result.fault = FaultClass::none;
      result.verdict = Verdict::none;
      add_note("no significant components");
      result.notes = notes_.str();
      return result;
    }
    annotate_subharmonics();

    if (ball_full(result) || ball_dominant(result) || ball_pattern_partial(result) ||
        anchor_rule(result) || ball_support_partial(result) || family_partial(result)) {
      finish(result);
      return result;
    }

    result.fault = FaultClass::none;
    result.verdict = Verdict::none;
    add_note("no characteristic frequency matches the significant components");
    finish(result);
    return result;
  }

 private:
  const Family& family(FaultLabel label) const {
    for (const auto& f : families_)
      if (f.label == label) return f;
    throw std::logic_error("diagnose: unknown family");
  }

  void check_grid_coverage() const {
    const double lo = sios_.grid.components.front();
    const double hi = sios_.grid.components.back();
    bool covered = false;
    for (const auto& fam : families_)
      for (double base : {fam.kinematic_hz, fam.lock_hz}) {
        const double k0 = std::max(1.0, std::ceil(lo / base - 1e-9));
        if (k0 * base <= hi * (1.0 + 1e-12)) covered = true;
      }
    for (double hz : ball_fault_pattern_hz(spec_))
      if (hz >= lo && hz <= hi) covered = true;
    if (!covered)
      throw std::invalid_argument(
          "diagnose: no harmonic of any characteristic frequency falls inside the "
          "grid; check the grid range against the shaft frequency and multipliers");
  }

  void add_note(const std::string& note) const {
    if (notes_.tellp() > 0) notes_ << "; ";
    notes_ << note;
  }

  void annotate_index_disagreements() {
    std::size_t shown = 0;
    for (const auto& rc : sig_.power_only) {
      if (shown++ == 3) break;
      add_note(format_hz(rc.frequency_hz) +
               " Hz: high power, few harmonics - likely a lone discrete component");
    }
    shown = 0;
    for (const auto& rc : sig_.count_only) {
      if (shown++ == 3) break;
      add_note(format_hz(rc.frequency_hz) +
               " Hz: many harmonics, low power - likely noise-built");
    }
  }

  void annotate_subharmonics() {
    const double base = 0.2 * spec_.shaft_freq_hz;
    for (const auto& rc : union_)
      if (match_harmonic(rc.frequency_hz, base, config_.match_tol_rel).ok) {
        add_note("significant components align with harmonics of 0.2 x shaft frequency");
        return;
      }
  }

  void push_evidence(DiagnosisResult& result, const RankedComponent& rc,
                     const std::string& label, bool matched) const {
    for (const auto& e : result.evidence)
      if (e.component_index == rc.index) return;  // first label wins
    result.evidence.push_back(
        {rc.index, rc.frequency_hz, rc.count, rc.power, matched, label});
  }

  // Remaining dominant components, labelled by whatever family they match.
  void append_dominant_context(DiagnosisResult& result) const {
    for (const auto& rc : sig_.dominant) {
      std::string label = "unmatched";
      bool matched = false;
      for (const auto& fam : families_) {
        const FamilyMatch fm = match_family(rc.frequency_hz, fam, config_.match_tol_rel);
        if (fm.ok) {
          label = std::string(fam.name) + " k=" + std::to_string(fm.order) + " @ " +
                  format_hz(fm.target_hz) + " Hz";
          matched = true;
          break;
        }
      }
      // Context entries never mark a match on a none verdict; the rules
      // already declined them.
      if (result.verdict == Verdict::none) {
        matched = false;
        label = "unmatched";
      }
      push_evidence(result, rc, label, matched);
    }
  }

  const RankedComponent* find_component(std::size_t index) const {
    for (const auto& rc : union_)
      if (rc.index == index) return &rc;
    return nullptr;
  }

  std::vector<std::size_t> family_slot(const Family& fam) const {
    std::vector<std::size_t> slot;
    for (const auto& rc : union_)
      if (match_family(rc.frequency_hz, fam, config_.match_tol_rel).ok)
        slot.push_back(rc.index);
    return slot;
  }

  // Ball, full pattern: the four BFP lines plus a 2xBSF harmonic plus an FTF
  // harmonic, six pairwise-distinct significant components.
  bool ball_full(DiagnosisResult& result) const {
    const std::array<double, 4> targets = ball_fault_pattern_hz(spec_);
    std::vector<std::vector<std::size_t>> slots(6);
    for (std::size_t t = 0; t < 4; ++t)
      for (const auto& rc : union_)
        if (std::abs(rc.frequency_hz - targets[t]) <= config_.match_tol_rel * targets[t])
          slots[t].push_back(rc.index);
    slots[4] = family_slot(family(FaultLabel::bsf_x2));
    slots[5] = family_slot(family(FaultLabel::ftf));

    SlotMatcher matcher(std::move(slots));
    if (matcher.solve() != 6) return false;

    result.fault = FaultClass::ball;
    result.verdict = Verdict::yes;
    const auto assigned = matcher.assignment();
    static const char* kSlotNames[6] = {"BFP 3.6x",  "BFP 3.611x", "BFP 5.4x",
                                        "BFP 5.416x", "2xBSF",      "FTF harmonic"};
    for (std::size_t s = 0; s < assigned.size(); ++s)
      if (const RankedComponent* rc = find_component(assigned[s]))
        push_evidence(result, *rc, kSlotNames[s], true);
    return true;
  }

  // Ball, alternative: the top dominant component is itself a 2xBSF harmonic.
  bool ball_dominant(DiagnosisResult& result) const {
    if (sig_.dominant.empty()) return false;
    const RankedComponent& anchor = sig_.dominant.front();
    const Family& bsf2 = family(FaultLabel::bsf_x2);
    const FamilyMatch fm = match_family(anchor.frequency_hz, bsf2, config_.match_tol_rel);
    if (!fm.ok) return false;

    result.fault = FaultClass::ball;
    result.verdict = contested(anchor, FaultLabel::bsf_x2, result) ? Verdict::partial
                                                                   : Verdict::yes;
    push_evidence(result, anchor,
                  "2xBSF k=" + std::to_string(fm.order) + " @ " + format_hz(fm.target_hz) +
                      " Hz (dominant)",
                  true);
    return true;
  }

  // Inner/outer: decided by the top dominant component alone.
  bool anchor_rule(DiagnosisResult& result) const {
    if (sig_.dominant.empty()) return false;
    const RankedComponent& anchor = sig_.dominant.front();
    for (FaultLabel label : {FaultLabel::bpfi, FaultLabel::bpfo}) {
      const Family& fam = family(label);
      const FamilyMatch fm = match_family(anchor.frequency_hz, fam, config_.match_tol_rel);
      if (!fm.ok) continue;
      result.fault =
          label == FaultLabel::bpfi ? FaultClass::inner_race : FaultClass::outer_race;
      result.verdict =
          contested(anchor, label, result) ? Verdict::partial : Verdict::yes;
      push_evidence(result, anchor,
                    std::string(fam.name) + " k=" + std::to_string(fm.order) + " @ " +
                        format_hz(fm.target_hz) + " Hz (dominant)",
                    true);
      return true;
    }
    return false;
  }

  // A rival dominant component from a different verdict-capable family at
  // comparable power makes the anchor's claim ambiguous.
  bool contested(const RankedComponent& anchor, FaultLabel anchor_label,
                 DiagnosisResult& result) const {
    for (std::size_t i = 1; i < sig_.dominant.size(); ++i) {
      const RankedComponent& rival = sig_.dominant[i];
      for (FaultLabel label : {FaultLabel::bpfo, FaultLabel::bpfi, FaultLabel::bsf_x2}) {
        if (label == anchor_label) continue;
        const Family& fam = family(label);
        if (!match_family(rival.frequency_hz, fam, config_.match_tol_rel).ok) continue;
        if (anchor.power < config_.dominance_ratio * rival.power) {
          add_note(std::string("ambiguous dominance: ") + fam.name + " component at " +
                   format_hz(rival.frequency_hz) + " Hz has comparable power");
          push_evidence(result, rival, std::string(fam.name) + " (rival)", true);
          return true;
        }
      }
    }
    return false;
  }

  void push_bfp_lines(DiagnosisResult& result) const {
    for (std::size_t t = 0; t < 4; ++t)
      if (bfp_.matched_hz[t] > 0.0)
        for (const auto& rc : union_)
          if (rc.frequency_hz == bfp_.matched_hz[t])
            push_evidence(result, rc, "BFP line", true);
  }

  // The whole four-line pattern without its 2xBSF/FTF support. Checked
  // before the anchor rule: the 5.4x/3.6x lines graze BPFI/BPFO, so a
  // dominant pattern line must not be mistaken for a race fault when all
  // four lines stand on distinct components.
  bool ball_pattern_partial(DiagnosisResult& result) const {
    if (!bfp_.found) return false;
    result.fault = FaultClass::ball;
    result.verdict = Verdict::partial;
    add_note("ball pattern present but 2xBSF/FTF support is missing");
    push_bfp_lines(result);
    return true;
  }

  // Weaker ball evidence once the anchor rule has declined: one line from
  // each BFP pair, or a significant 2xBSF harmonic.
  bool ball_support_partial(DiagnosisResult& result) const {
    const std::array<double, 4> targets = ball_fault_pattern_hz(spec_);
    const auto pair_hit = [&](std::size_t t0, std::size_t t1) {
      bool lo = false;
      bool hi = false;
      for (const auto& rc : union_) {
        if (std::abs(rc.frequency_hz - targets[t0]) <= config_.match_tol_rel * targets[t0])
          lo = true;
        if (std::abs(rc.frequency_hz - targets[t1]) <= config_.match_tol_rel * targets[t1])
          hi = true;
      }
      return lo && hi;
    };
    const bool both_pairs = pair_hit(0, 2) || pair_hit(0, 3) || pair_hit(1, 2) ||
                            pair_hit(1, 3);
    const std::vector<std::size_t> bsf2_slot = family_slot(family(FaultLabel::bsf_x2));
    if (!both_pairs && bsf2_slot.empty()) return false;

    result.fault = FaultClass::ball;
    result.verdict = Verdict::partial;
    push_bfp_lines(result);
    for (std::size_t index : bsf2_slot)
      if (const RankedComponent* rc = find_component(index))
        push_evidence(result, *rc, "2xBSF harmonic", true);
    return true;
  }

  // Partial inner/outer: the family is significant without being dominant.
  bool family_partial(DiagnosisResult& result) const {
    for (FaultLabel label : {FaultLabel::bpfi, FaultLabel::bpfo}) {
      const Family& fam = family(label);
      for (const auto& rc : union_) {
        const FamilyMatch fm = match_family(rc.frequency_hz, fam, config_.match_tol_rel);
        if (!fm.ok) continue;
        result.fault =
            label == FaultLabel::bpfi ? FaultClass::inner_race : FaultClass::outer_race;
        result.verdict = Verdict::partial;
        push_evidence(result, rc,
                      std::string(fam.name) + " k=" + std::to_string(fm.order) + " @ " +
                          format_hz(fm.target_hz) + " Hz (significant, not dominant)",
                      true);
        add_note(std::string(fam.name) +
                 " is significant but does not dominate the structure");
        return true;
      }
    }
    return false;
  }

  void finish(DiagnosisResult& result) {
    append_dominant_context(result);
    result.notes = notes_.str();
  }

  const Sios& sios_;
  const BearingSpec& spec_;
  const SignificanceConfig& config_;
  std::vector<Family> families_;
  Significance sig_;
  std::vector<RankedComponent> union_;
  BfpMatch bfp_;
  mutable std::ostringstream notes_;
};

}  // namespace

DiagnosisResult classify(const Sios& sios, const BearingSpec& spec,
                         const SignificanceConfig& config) {
  validate_spec(spec);
  validate_config(config);
  RuleEngine engine(sios, spec, config);
  return engine.run();
}

char verdict_letter(Verdict verdict) {
  switch (verdict) {
    case Verdict::yes: return 'Y';
    case Verdict::partial: return 'P';
    case Verdict::none: return 'N';
  }
  throw std::logic_error("verdict_letter: bad verdict");
}

int exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::yes: return 0;
    case Verdict::partial: return 10;
    case Verdict::none: return 20;
  }
  throw std::logic_error("exit_code: bad verdict");
}

}  // namespace sios
