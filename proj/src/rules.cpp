#include "adamus/rules.h"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace adamus {

std::string_view comparator_name(Comparator cmp) {
  switch (cmp) {
    case Comparator::LessEq: return "le";
    case Comparator::Less: return "lt";
    case Comparator::GreaterEq: return "ge";
    case Comparator::Greater: return "gt";
  }
  return "?";
}

std::optional<Comparator> comparator_from_name(std::string_view name) {
  if (name == "le") return Comparator::LessEq;
  if (name == "lt") return Comparator::Less;
  if (name == "ge") return Comparator::GreaterEq;
  if (name == "gt") return Comparator::Greater;
  return std::nullopt;
}

RuleSet default_ruleset() {
  RuleSet rs;
  rs.rules = {
      {MoodCategory::Sad,
       {{Attribute::Life, Comparator::LessEq, 1.0},
        {Attribute::Energy, Comparator::LessEq, 20.0},
        {Attribute::Score, Comparator::Less, 2000.0},
        {Attribute::Level, Comparator::LessEq, 2.0}}},
      {MoodCategory::Happy,
       {{Attribute::Life, Comparator::GreaterEq, 4.0},
        {Attribute::Energy, Comparator::GreaterEq, 80.0},
        {Attribute::Score, Comparator::Less, 8000.0},
        {Attribute::Level, Comparator::GreaterEq, 8.0}}},
      {MoodCategory::Normal,
       {{Attribute::Life, Comparator::LessEq, 3.0},
        {Attribute::Energy, Comparator::LessEq, 50.0},
        {Attribute::Score, Comparator::Less, 5000.0},
        {Attribute::Level, Comparator::Less, 6.0}}},
  };
  rs.fallback = MoodCategory::Angry;
  return rs;
}

ScalingProfile default_scaling() { return {500.0, 1000.0, 1000.0, 1000.0}; }

GameState scale_state(const GameState& state, const ScalingProfile& profile) {
  const double life = state.life * profile.life;
  const double energy = state.energy * profile.energy;
  const double score = state.score * profile.score;
  const double level = state.level * profile.level;
  if (!std::isfinite(life) || !std::isfinite(energy) ||
      !std::isfinite(score) || !std::isfinite(level)) {
    throw std::overflow_error("scale_state: scaled attribute overflowed");
  }
  return {life, energy, score, level};
}

namespace {

bool clause_holds(const ThresholdClause& clause, const GameState& scaled) {
  const double value = scaled.attribute(clause.attr);
  switch (clause.cmp) {
    case Comparator::LessEq: return value <= clause.bound;
    case Comparator::Less: return value < clause.bound;
    case Comparator::GreaterEq: return value >= clause.bound;
    case Comparator::Greater: return value > clause.bound;
  }
  return false;
}

}  // namespace

MoodCategory evaluate(const GameState& state, const RuleSet& ruleset,
                      const ScalingProfile& profile) {
  const GameState scaled = scale_state(state, profile);
  for (const Rule& rule : ruleset.rules) {
    bool matched = true;
    for (const ThresholdClause& clause : rule.clauses) {
      if (!clause_holds(clause, scaled)) {
        matched = false;
        break;
      }
    }
    if (matched) return rule.mood;
  }
  return ruleset.fallback;
}

MoodCategory evaluate_naive(const GameState& state, const RuleSet& ruleset,
                            const ScalingProfile& profile) {
  // Spelled out clause by clause on purpose; must not share code with
  // evaluate() so the two stay independent checks of each other.
  const double life = state.life * profile.life;
  const double energy = state.energy * profile.energy;
  const double score = state.score * profile.score;
  const double level = state.level * profile.level;

  for (std::size_t i = 0; i < ruleset.rules.size(); ++i) {
    bool matched = true;
    for (std::size_t j = 0; j < ruleset.rules[i].clauses.size(); ++j) {
      const ThresholdClause& clause = ruleset.rules[i].clauses[j];

      double value = 0.0;
      if (clause.attr == Attribute::Life) {
        value = life;
      } else if (clause.attr == Attribute::Energy) {
        value = energy;
      } else if (clause.attr == Attribute::Score) {
        value = score;
      } else {
        value = level;
      }

      bool holds = false;
      if (clause.cmp == Comparator::LessEq) {
        holds = value <= clause.bound;
      } else if (clause.cmp == Comparator::Less) {
        holds = value < clause.bound;
      } else if (clause.cmp == Comparator::GreaterEq) {
        holds = value >= clause.bound;
      } else {
        holds = value > clause.bound;
      }

      if (!holds) {
        matched = false;
        break;
      }
    }
    if (matched) return ruleset.rules[i].mood;
  }
  return ruleset.fallback;
}

CalibrationGrid CalibrationGrid::uniform(std::vector<double> factors) {
  CalibrationGrid grid;
  grid.life = factors;
  grid.energy = factors;
  grid.score = factors;
  grid.level = std::move(factors);
  return grid;
}

CalibrationGrid default_grid() {
  return CalibrationGrid::uniform({250.0, 500.0, 750.0, 1000.0, 1250.0});
}

std::vector<ScalingProfile> calibrate_scaling(
    const std::vector<LabeledState>& rows, const RuleSet& ruleset,
    const CalibrationGrid& grid) {
  if (rows.empty()) {
    throw std::invalid_argument("calibrate_scaling: rows must be non-empty");
  }
  if (grid.life.empty() || grid.energy.empty() || grid.score.empty() ||
      grid.level.empty()) {
    throw std::invalid_argument(
        "calibrate_scaling: grid must list candidates for every attribute");
  }

  std::vector<ScalingProfile> consistent;
  for (double k_life : grid.life) {
    for (double k_energy : grid.energy) {
      for (double k_score : grid.score) {
        for (double k_level : grid.level) {
          const ScalingProfile profile(k_life, k_energy, k_score, k_level);
          bool all_match = true;
          for (const LabeledState& row : rows) {
            if (evaluate(row.state, ruleset, profile) != row.label) {
              all_match = false;
              break;
            }
          }
          if (all_match) consistent.push_back(profile);
        }
      }
    }
  }
  return consistent;
}

namespace {

// Half-open/closed interval over one attribute, starting at the full
// domain [0, +inf). Used for the conservative containment analysis.
struct Interval {
  double lo = 0.0;
  bool lo_incl = true;
  double hi = std::numeric_limits<double>::infinity();
  bool hi_incl = true;

  void apply(const ThresholdClause& clause) {
    switch (clause.cmp) {
      case Comparator::LessEq:
        if (clause.bound < hi) { hi = clause.bound; hi_incl = true; }
        break;
      case Comparator::Less:
        if (clause.bound < hi || (clause.bound == hi && hi_incl)) {
          hi = clause.bound;
          hi_incl = false;
        }
        break;
      case Comparator::GreaterEq:
        if (clause.bound > lo) { lo = clause.bound; lo_incl = true; }
        break;
      case Comparator::Greater:
        if (clause.bound > lo || (clause.bound == lo && lo_incl)) {
          lo = clause.bound;
          lo_incl = false;
        }
        break;
    }
  }

  bool empty() const {
    if (lo > hi) return true;
    return lo == hi && !(lo_incl && hi_incl);
  }

  // True when other is a subset of *this.
  bool contains(const Interval& other) const {
    if (other.empty()) return true;
    const bool lower_ok = lo < other.lo ||
                          (lo == other.lo && (lo_incl || !other.lo_incl));
    const bool upper_ok = hi > other.hi ||
                          (hi == other.hi && (hi_incl || !other.hi_incl));
    return lower_ok && upper_ok;
  }
};

struct RuleRegion {
  std::array<Interval, 4> by_attr;

  explicit RuleRegion(const Rule& rule) {
    for (const ThresholdClause& clause : rule.clauses) {
      by_attr[static_cast<std::size_t>(clause.attr)].apply(clause);
    }
  }

  bool contains(const RuleRegion& other) const {
    for (std::size_t i = 0; i < by_attr.size(); ++i) {
      if (!by_attr[i].contains(other.by_attr[i])) return false;
    }
    return true;
  }
};

std::string rule_label(const RuleSet& rs, std::size_t index) {
  return "rule " + std::to_string(index) + " (" +
         std::string(mood_name(rs.rules[index].mood)) + ")";
}

}  // namespace

std::vector<Diagnostic> validate_ruleset(const RuleSet& ruleset) {
  using Severity = Diagnostic::Severity;
  std::vector<Diagnostic> out;

  bool structural_error = false;
  for (std::size_t i = 0; i < ruleset.rules.size(); ++i) {
    const Rule& rule = ruleset.rules[i];
    if (rule.clauses.empty()) {
      out.push_back({Severity::Error, rule_label(ruleset, i) + ": no clauses"});
      structural_error = true;
    }
    for (std::size_t j = 0; j < rule.clauses.size(); ++j) {
      if (!std::isfinite(rule.clauses[j].bound)) {
        out.push_back({Severity::Error,
                       rule_label(ruleset, i) + ": non-finite bound in clause " +
                           std::to_string(j)});
        structural_error = true;
      }
    }
  }

  if (ruleset.rules.empty()) {
    out.push_back({Severity::Note,
                   "fallback-only ruleset: every state maps to " +
                       std::string(mood_name(ruleset.fallback))});
    return out;
  }

  std::map<MoodCategory, std::size_t> mood_uses;
  for (const Rule& rule : ruleset.rules) ++mood_uses[rule.mood];
  for (const auto& [mood, uses] : mood_uses) {
    if (uses > 1) {
      out.push_back({Severity::Note,
                     "mood " + std::string(mood_name(mood)) + " appears in " +
                         std::to_string(uses) + " rules"});
    }
  }

  // Containment analysis is only meaningful on structurally sound rules.
  if (structural_error) return out;

  std::vector<RuleRegion> regions;
  regions.reserve(ruleset.rules.size());
  for (const Rule& rule : ruleset.rules) regions.emplace_back(rule);

  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[i].contains(regions[j])) {
        out.push_back({Severity::Warning,
                       rule_label(ruleset, j) + " is unreachable: its region "
                           "is contained in the region of " +
                           rule_label(ruleset, i)});
      } else if (regions[j].contains(regions[i])) {
        out.push_back({Severity::Note,
                       rule_label(ruleset, i) + " region is contained in the "
                           "region of " + rule_label(ruleset, j) +
                           "; listed order is significant"});
      }
    }
  }
  return out;
}

namespace {

using nlohmann::json;

ThresholdClause clause_from_json(const json& j) {
  if (!j.is_object()) {
    throw std::runtime_error("ruleset: clause must be an object");
  }
  const auto attr = attribute_from_name(j.at("attr").get<std::string>());
  if (!attr) {
    throw std::runtime_error("ruleset: unknown attribute '" +
                             j.at("attr").get<std::string>() + "'");
  }
  const auto cmp = comparator_from_name(j.at("cmp").get<std::string>());
  if (!cmp) {
    throw std::runtime_error("ruleset: unknown comparator '" +
                             j.at("cmp").get<std::string>() + "'");
  }
  if (!j.at("bound").is_number()) {
    throw std::runtime_error("ruleset: clause bound must be a number");
  }
  const double bound = j.at("bound").get<double>();
  if (!std::isfinite(bound)) {
    throw std::runtime_error("ruleset: clause bound must be finite");
  }
  return {*attr, *cmp, bound};
}

MoodCategory mood_from_json(const json& j, const char* what) {
  const auto mood = mood_from_name(j.get<std::string>());
  if (!mood) {
    throw std::runtime_error("ruleset: unknown " + std::string(what) + " '" +
                             j.get<std::string>() + "'");
  }
  return *mood;
}

RulesetFile ruleset_from_json(const json& j) {
  RulesetFile file;
  if (!j.is_object() || !j.contains("rules") || !j.contains("fallback")) {
    throw std::runtime_error(
        "ruleset: top-level object needs 'rules' and 'fallback'");
  }
  for (const json& jr : j.at("rules")) {
    Rule rule;
    rule.mood = mood_from_json(jr.at("mood"), "mood");
    for (const json& jc : jr.at("clauses")) {
      rule.clauses.push_back(clause_from_json(jc));
    }
    if (rule.clauses.empty()) {
      throw std::runtime_error("ruleset: rule for '" +
                               std::string(mood_name(rule.mood)) +
                               "' has no clauses");
    }
    file.ruleset.rules.push_back(std::move(rule));
  }
  file.ruleset.fallback = mood_from_json(j.at("fallback"), "fallback mood");
  if (j.contains("scaling")) {
    const json& js = j.at("scaling");
    try {
      file.scaling = ScalingProfile(
          js.at("life").get<double>(), js.at("energy").get<double>(),
          js.at("score").get<double>(), js.at("level").get<double>());
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(std::string("ruleset: ") + e.what());
    }
  }
  return file;
}

json ruleset_to_json(const RulesetFile& file) {
  json rules = json::array();
  for (const Rule& rule : file.ruleset.rules) {
    json clauses = json::array();
    for (const ThresholdClause& clause : rule.clauses) {
      clauses.push_back({{"attr", std::string(attribute_name(clause.attr))},
                         {"cmp", std::string(comparator_name(clause.cmp))},
                         {"bound", clause.bound}});
    }
    rules.push_back({{"mood", std::string(mood_name(rule.mood))},
                     {"clauses", std::move(clauses)}});
  }
  json j = {{"rules", std::move(rules)},
            {"fallback", std::string(mood_name(file.ruleset.fallback))}};
  if (file.scaling) {
    j["scaling"] = {{"life", file.scaling->life},
                    {"energy", file.scaling->energy},
                    {"score", file.scaling->score},
                    {"level", file.scaling->level}};
  }
  return j;
}

}  // namespace

RulesetFile load_ruleset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open ruleset file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  try {
    return ruleset_from_json(j);
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void save_ruleset_file(const RulesetFile& file,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write ruleset file: " + path.string());
  }
  out << ruleset_to_json(file).dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace adamus
