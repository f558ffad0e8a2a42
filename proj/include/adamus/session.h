#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "adamus/core.h"
#include "adamus/rules.h"
#include "adamus/synth.h"

namespace adamus {

// A telemetry trace; labels, when present, pair one mood per row.
struct Dataset {
  std::vector<GameState> rows;
  std::optional<std::vector<MoodCategory>> labels;
};

struct TimelineEntry {
  std::size_t row;
  MoodCategory mood;

  bool operator==(const TimelineEntry&) const = default;
};

struct MoodTransition {
  std::size_t row;
  MoodCategory from;
  MoodCategory to;

  bool operator==(const MoodTransition&) const = default;
};

// Per-row classification of a session plus the rows where the mood flips.
struct MoodTimeline {
  std::vector<TimelineEntry> entries;
  std::vector<MoodTransition> transitions;
};

// Upper bounds of the half-open generation range per attribute (lower
// bounds are all zero).
struct AttributeRanges {
  double life_hi;
  double energy_hi;
  double score_hi;
  double level_hi;
};

// Default spans chosen to cover the bundled telemetry fixtures.
inline constexpr AttributeRanges kDefaultRanges{0.004, 0.09, 10.0, 0.01};

Dataset generate_dataset(std::uint64_t seed, std::size_t n_rows,
                         const AttributeRanges& ranges = kDefaultRanges);

// Classifies every row through the rules engine.
MoodTimeline run_session(const Dataset& dataset, const RuleSet& ruleset,
                         const ScalingProfile& profile);

struct TimelineStats {
  std::size_t rows = 0;
  std::size_t transitions = 0;
  std::array<std::size_t, 4> counts{};     // indexed by MoodCategory
  std::array<double, 4> fractions{};

  std::size_t count(MoodCategory mood) const {
    return counts[static_cast<std::size_t>(mood)];
  }
  double fraction(MoodCategory mood) const {
    return fractions[static_cast<std::size_t>(mood)];
  }
};

TimelineStats timeline_stats(const MoodTimeline& timeline);

// Renders one mood block per maximal run of equal moods (block seed =
// base seed XOR run index) and chains the blocks with crossfades at the
// given overlap.
AudioBuffer render_session(const MoodTimeline& timeline,
                           const std::map<MoodCategory, MoodSignature>& signatures,
                           std::uint64_t seed, double segment_seconds,
                           double overlap_seconds, int sample_rate);

// CSV, header `life,energy,score,level` with optional trailing `label`
// column. Values are non-negative decimals; parse errors carry row and
// column context.
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::istream& in, const std::string& source_name);
void save_csv(const Dataset& dataset, const std::filesystem::path& path);
void write_csv(const Dataset& dataset, std::ostream& out);

}  // namespace adamus
