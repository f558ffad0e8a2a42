#include "adamus/core.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adamus {

std::string_view mood_name(MoodCategory mood) {
  switch (mood) {
    case MoodCategory::Sad: return "sad";
    case MoodCategory::Happy: return "happy";
    case MoodCategory::Normal: return "normal";
    case MoodCategory::Angry: return "angry";
  }
  return "?";
}

std::optional<MoodCategory> mood_from_name(std::string_view name) {
  for (MoodCategory mood : kAllMoods) {
    if (name == mood_name(mood)) return mood;
  }
  return std::nullopt;
}

std::string_view attribute_name(Attribute attr) {
  switch (attr) {
    case Attribute::Life: return "life";
    case Attribute::Energy: return "energy";
    case Attribute::Score: return "score";
    case Attribute::Level: return "level";
  }
  return "?";
}

std::optional<Attribute> attribute_from_name(std::string_view name) {
  for (Attribute attr : kAllAttributes) {
    if (name == attribute_name(attr)) return attr;
  }
  return std::nullopt;
}

namespace {

void require_valid_attribute(double value, std::string_view what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("GameState: " + std::string(what) +
                                " must be finite and non-negative");
  }
}

}  // namespace

GameState::GameState(double life, double energy, double score, double level)
    : life(life), energy(energy), score(score), level(level) {
  require_valid_attribute(life, "life");
  require_valid_attribute(energy, "energy");
  require_valid_attribute(score, "score");
  require_valid_attribute(level, "level");
}

double GameState::attribute(Attribute attr) const {
  switch (attr) {
    case Attribute::Life: return life;
    case Attribute::Energy: return energy;
    case Attribute::Score: return score;
    case Attribute::Level: return level;
  }
  throw std::logic_error("GameState::attribute: bad attribute");
}

ScalingProfile::ScalingProfile(double life, double energy, double score,
                               double level)
    : life(life), energy(energy), score(score), level(level) {
  for (Attribute attr : kAllAttributes) {
    const double k = factor(attr);
    if (!std::isfinite(k) || k <= 0.0) {
      throw std::invalid_argument("ScalingProfile: factor for " +
                                  std::string(attribute_name(attr)) +
                                  " must be positive and finite");
    }
  }
}

double ScalingProfile::factor(Attribute attr) const {
  switch (attr) {
    case Attribute::Life: return life;
    case Attribute::Energy: return energy;
    case Attribute::Score: return score;
    case Attribute::Level: return level;
  }
  throw std::logic_error("ScalingProfile::factor: bad attribute");
}

MoodSignature::MoodSignature(MoodCategory mood,
                             const std::array<double, kLength>& values)
    : mood(mood), values(values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(
          "MoodSignature: every element must lie in [0, 1]");
    }
  }
}

const std::map<MoodCategory, MoodSignature>& default_signatures() {
  static const std::map<MoodCategory, MoodSignature> signatures = {
      {MoodCategory::Normal,
       {MoodCategory::Normal, {0.1100, 0.1110, 0.1140, 0.1090, 0.0970, 0.1080}}},
      {MoodCategory::Angry,
       {MoodCategory::Angry, {0.0970, 0.1100, 0.1030, 0.1010, 0.1140, 0.0320}}},
      {MoodCategory::Happy,
       {MoodCategory::Happy, {0.1040, 0.0970, 0.1120, 0.1120, 0.1210, 0.0320}}},
      {MoodCategory::Sad,
       {MoodCategory::Sad, {0.1150, 0.0970, 0.1000, 0.0320, 0.0320, 0.0320}}},
  };
  return signatures;
}

}  // namespace adamus
