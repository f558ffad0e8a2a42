#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>

namespace adamus {

// The four mood categories the engine selects between. Closed set.
enum class MoodCategory { Sad, Happy, Normal, Angry };

inline constexpr std::array<MoodCategory, 4> kAllMoods = {
    MoodCategory::Sad, MoodCategory::Happy, MoodCategory::Normal,
    MoodCategory::Angry};

std::string_view mood_name(MoodCategory mood);
std::optional<MoodCategory> mood_from_name(std::string_view name);

// Telemetry attributes of one game-state row.
enum class Attribute { Life, Energy, Score, Level };

inline constexpr std::array<Attribute, 4> kAllAttributes = {
    Attribute::Life, Attribute::Energy, Attribute::Score, Attribute::Level};

std::string_view attribute_name(Attribute attr);
std::optional<Attribute> attribute_from_name(std::string_view name);

// One telemetry row. Every attribute must be finite and non-negative;
// the constructor rejects anything else.
struct GameState {
  GameState(double life, double energy, double score, double level);

  double attribute(Attribute attr) const;

  bool operator==(const GameState&) const = default;

  double life;
  double energy;
  double score;
  double level;
};

// Per-attribute multiplicative factors mapping normalized telemetry into
// the rule threshold domain. Factors must be positive and finite.
struct ScalingProfile {
  ScalingProfile(double life, double energy, double score, double level);

  static ScalingProfile identity() { return {1.0, 1.0, 1.0, 1.0}; }

  double factor(Attribute attr) const;

  bool operator==(const ScalingProfile&) const = default;

  double life;
  double energy;
  double score;
  double level;
};

// Six per-segment amplitude scalars attached to one mood category.
// Elements must lie in [0, 1].
struct MoodSignature {
  static constexpr std::size_t kLength = 6;

  MoodSignature(MoodCategory mood, const std::array<double, kLength>& values);

  bool operator==(const MoodSignature&) const = default;

  MoodCategory mood;
  std::array<double, kLength> values;
};

// The built-in signature vector for each mood category. Pure constant:
// every call returns the same four vectors.
const std::map<MoodCategory, MoodSignature>& default_signatures();

}  // namespace adamus
