#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adamus/core.h"

namespace adamus {

enum class Comparator { LessEq, Less, GreaterEq, Greater };

std::string_view comparator_name(Comparator cmp);  // "le", "lt", "ge", "gt"
std::optional<Comparator> comparator_from_name(std::string_view name);

// One conjunct: <attribute> <cmp> <bound>, tested in the scaled domain.
struct ThresholdClause {
  Attribute attr;
  Comparator cmp;
  double bound;

  bool operator==(const ThresholdClause&) const = default;
};

// A mood guarded by a conjunction of clauses. An empty clause list is
// invalid; validate_ruleset() reports it.
struct Rule {
  MoodCategory mood;
  std::vector<ThresholdClause> clauses;

  bool operator==(const Rule&) const = default;
};

// Ordered rules with first-match semantics and a fallback mood, so every
// state maps to exactly one category.
struct RuleSet {
  std::vector<Rule> rules;
  MoodCategory fallback;

  bool operator==(const RuleSet&) const = default;
};

// The built-in rule set: Sad, Happy, Normal in that order, Angry fallback.
// Listed order matters: the Sad region is contained in the Normal region.
RuleSet default_ruleset();

// Scaling under which the built-in rule set reproduces the bundled
// labeled datasets. Recoverable via calibrate_scaling().
ScalingProfile default_scaling();

// Multiplies each attribute by its profile factor. Throws
// std::overflow_error if a product is no longer finite.
GameState scale_state(const GameState& state, const ScalingProfile& profile);

// Scales the state, then returns the mood of the first rule whose every
// clause holds; the fallback if none does. Pure and total.
MoodCategory evaluate(const GameState& state, const RuleSet& ruleset,
                      const ScalingProfile& profile);

// Literal re-implementation of evaluate() with no shared helpers. Exists
// solely so the two code paths can be checked against each other.
MoodCategory evaluate_naive(const GameState& state, const RuleSet& ruleset,
                            const ScalingProfile& profile);

struct LabeledState {
  GameState state;
  MoodCategory label;
};

// Candidate scaling factors per attribute for calibration.
struct CalibrationGrid {
  std::vector<double> life;
  std::vector<double> energy;
  std::vector<double> score;
  std::vector<double> level;

  // Same candidate list for every attribute.
  static CalibrationGrid uniform(std::vector<double> factors);
};

CalibrationGrid default_grid();  // {250, 500, 750, 1000, 1250} per attribute

// Brute-force search over the grid cross-product: returns every profile
// under which evaluate() reproduces all given labels. Empty result is a
// valid answer. Throws std::invalid_argument on empty rows or grid.
std::vector<ScalingProfile> calibrate_scaling(
    const std::vector<LabeledState>& rows, const RuleSet& ruleset,
    const CalibrationGrid& grid);

struct Diagnostic {
  enum class Severity { Error, Warning, Note };

  Severity severity;
  std::string message;
};

// Static checks: empty-clause rules, non-finite bounds, unreachable rules
// (later rule contained in an earlier one, decided by per-attribute
// interval analysis), duplicate moods, order-significant containment.
std::vector<Diagnostic> validate_ruleset(const RuleSet& ruleset);

// Rule-set file: the JSON schema carries the ordered rules, the fallback
// mood, and optionally a scaling profile.
struct RulesetFile {
  RuleSet ruleset;
  std::optional<ScalingProfile> scaling;
};

RulesetFile load_ruleset_file(const std::filesystem::path& path);
void save_ruleset_file(const RulesetFile& file,
                       const std::filesystem::path& path);

}  // namespace adamus
