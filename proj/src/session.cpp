#include "adamus/session.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "adamus/rng.h"

namespace adamus {

Dataset generate_dataset(std::uint64_t seed, std::size_t n_rows,
                         const AttributeRanges& ranges) {
  if (n_rows < 1) {
    throw std::invalid_argument("generate_dataset: n_rows must be >= 1");
  }
  Xoshiro256pp rng(seed);
  Dataset dataset;
  dataset.rows.reserve(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const double life = rng.next_in_range(0.0, ranges.life_hi);
    const double energy = rng.next_in_range(0.0, ranges.energy_hi);
    const double score = rng.next_in_range(0.0, ranges.score_hi);
    const double level = rng.next_in_range(0.0, ranges.level_hi);
    dataset.rows.emplace_back(life, energy, score, level);
  }
  return dataset;
}

MoodTimeline run_session(const Dataset& dataset, const RuleSet& ruleset,
                         const ScalingProfile& profile) {
  MoodTimeline timeline;
  timeline.entries.reserve(dataset.rows.size());
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    const MoodCategory mood = evaluate(dataset.rows[i], ruleset, profile);
    if (i > 0 && mood != timeline.entries.back().mood) {
      timeline.transitions.push_back({i, timeline.entries.back().mood, mood});
    }
    timeline.entries.push_back({i, mood});
  }
  return timeline;
}

TimelineStats timeline_stats(const MoodTimeline& timeline) {
  TimelineStats stats;
  stats.rows = timeline.entries.size();
  stats.transitions = timeline.transitions.size();
  for (const TimelineEntry& entry : timeline.entries) {
    ++stats.counts[static_cast<std::size_t>(entry.mood)];
  }
  if (stats.rows > 0) {
    for (std::size_t i = 0; i < stats.counts.size(); ++i) {
      stats.fractions[i] =
          static_cast<double>(stats.counts[i]) / static_cast<double>(stats.rows);
    }
  }
  return stats;
}

AudioBuffer render_session(
    const MoodTimeline& timeline,
    const std::map<MoodCategory, MoodSignature>& signatures,
    std::uint64_t seed, double segment_seconds, double overlap_seconds,
    int sample_rate) {
  if (timeline.entries.empty()) {
    throw std::invalid_argument("render_session: timeline is empty");
  }
  if (overlap_seconds < 0.0 || !std::isfinite(overlap_seconds)) {
    throw std::invalid_argument(
        "render_session: overlap_seconds must be >= 0");
  }

  // All blocks share one length: 6 segments of round(seconds * rate).
  const long long segment_samples =
      std::llround(segment_seconds * sample_rate);
  const long long block_samples =
      static_cast<long long>(MoodSignature::kLength) * segment_samples;
  const long long overlap_samples =
      std::llround(overlap_seconds * sample_rate);
  if (overlap_samples > block_samples) {
    throw std::invalid_argument(
        "render_session: overlap (" + std::to_string(overlap_samples) +
        " samples) exceeds one mood block (" + std::to_string(block_samples) +
        " samples)");
  }

  // Maximal runs of consecutive equal moods.
  std::vector<MoodCategory> runs;
  for (const TimelineEntry& entry : timeline.entries) {
    if (runs.empty() || runs.back() != entry.mood) runs.push_back(entry.mood);
  }

  AudioBuffer session{sample_rate, {}};
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto it = signatures.find(runs[r]);
    if (it == signatures.end()) {
      throw std::invalid_argument("render_session: no signature for mood '" +
                                  std::string(mood_name(runs[r])) + "'");
    }
    AudioBuffer block =
        render_mood(runs[r], it->second, seed ^ static_cast<std::uint64_t>(r),
                    segment_seconds, sample_rate);
    session = (r == 0)
                  ? std::move(block)
                  : crossfade(session, block,
                              static_cast<std::size_t>(overlap_samples));
  }
  return session;
}

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void cell_error(const std::string& source, std::size_t line_no,
                             std::size_t column, const std::string& why) {
  throw std::runtime_error(source + ": row " + std::to_string(line_no) +
                           ", column " + std::to_string(column) + ": " + why);
}

double parse_attribute(const std::string& source, std::size_t line_no,
                       std::size_t column, const std::string& cell) {
  double value = 0.0;
  std::size_t consumed = 0;
  try {
    value = std::stod(cell, &consumed);
  } catch (const std::exception&) {
    cell_error(source, line_no, column, "non-numeric value '" + cell + "'");
  }
  if (consumed != cell.size() || cell.empty()) {
    cell_error(source, line_no, column, "non-numeric value '" + cell + "'");
  }
  if (!std::isfinite(value)) {
    cell_error(source, line_no, column, "non-finite value '" + cell + "'");
  }
  if (value < 0.0) {
    cell_error(source, line_no, column, "negative value '" + cell + "'");
  }
  return value;
}

constexpr const char* kHeader = "life,energy,score,level";
constexpr const char* kLabeledHeader = "life,energy,score,level,label";

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(source_name + ": empty file, expected header '" +
                             kHeader + "'");
  }
  line = strip_cr(line);

  bool labeled = false;
  if (line == kLabeledHeader) {
    labeled = true;
  } else if (line != kHeader) {
    throw std::runtime_error(source_name + ": bad header '" + line +
                             "', expected '" + kHeader + "'");
  }

  Dataset dataset;
  if (labeled) dataset.labels.emplace();

  const std::size_t expected_fields = labeled ? 5 : 4;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != expected_fields) {
      throw std::runtime_error(
          source_name + ": row " + std::to_string(line_no) + ": expected " +
          std::to_string(expected_fields) + " fields, got " +
          std::to_string(fields.size()));
    }

    const double life = parse_attribute(source_name, line_no, 1, fields[0]);
    const double energy = parse_attribute(source_name, line_no, 2, fields[1]);
    const double score = parse_attribute(source_name, line_no, 3, fields[2]);
    const double level = parse_attribute(source_name, line_no, 4, fields[3]);
    dataset.rows.emplace_back(life, energy, score, level);

    if (labeled) {
      const auto mood = mood_from_name(fields[4]);
      if (!mood) {
        cell_error(source_name, line_no, 5,
                   "unknown mood label '" + fields[4] + "'");
      }
      dataset.labels->push_back(*mood);
    }
  }

  if (dataset.rows.empty()) {
    throw std::runtime_error(source_name + ": no data rows");
  }
  return dataset;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset: " + path.string());
  }
  return parse_csv(in, path.filename().string());
}

void write_csv(const Dataset& dataset, std::ostream& out) {
  if (dataset.labels && dataset.labels->size() != dataset.rows.size()) {
    throw std::invalid_argument("write_csv: labels/rows length mismatch");
  }
  out << (dataset.labels ? kLabeledHeader : kHeader) << '\n';
  char cell[32];
  for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
    const GameState& row = dataset.rows[i];
    const double values[4] = {row.life, row.energy, row.score, row.level};
    for (int a = 0; a < 4; ++a) {
      std::snprintf(cell, sizeof cell, "%.6g", values[a]);
      out << (a == 0 ? "" : ",") << cell;
    }
    if (dataset.labels) out << ',' << mood_name((*dataset.labels)[i]);
    out << '\n';
  }
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write dataset: " + path.string());
  }
  write_csv(dataset, out);
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace adamus
