#include "adamus/survey.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace adamus {

namespace {

void bump(RatingCounts& counts, int rating, const char* approach) {
  switch (rating) {
    case 1: ++counts.dislike; return;
    case 2: ++counts.normal; return;
    case 3: ++counts.like; return;
    default:
      throw std::invalid_argument("aggregate: " + std::string(approach) +
                                  " rating " + std::to_string(rating) +
                                  " is outside the 1..3 scale");
  }
}

// round-half-up of 100 * like / total, in integers.
int like_percent(std::size_t like, std::size_t total) {
  return static_cast<int>((200 * like + total) / (2 * total));
}

}  // namespace

SurveySummary aggregate(const std::vector<SurveyRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("aggregate: no survey records");
  }
  SurveySummary summary;
  summary.total = records.size();
  for (const SurveyRecord& record : records) {
    bump(summary.adaptive, record.adaptive_rating, "adaptive");
    bump(summary.static_music, record.static_rating, "static");
  }
  summary.adaptive.like_pct = like_percent(summary.adaptive.like, summary.total);
  summary.static_music.like_pct =
      like_percent(summary.static_music.like, summary.total);
  return summary;
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

int parse_int(const std::string& source, std::size_t line_no,
              std::size_t column, const std::string& cell, int min_value,
              int max_value) {
  int value = 0;
  std::size_t consumed = 0;
  try {
    value = std::stoi(cell, &consumed);
  } catch (const std::exception&) {
    consumed = std::string::npos;
  }
  if (consumed != cell.size() || cell.empty()) {
    throw std::runtime_error(source + ": row " + std::to_string(line_no) +
                             ", column " + std::to_string(column) +
                             ": non-integer value '" + cell + "'");
  }
  if (value < min_value || value > max_value) {
    throw std::runtime_error(source + ": row " + std::to_string(line_no) +
                             ", column " + std::to_string(column) + ": value " +
                             cell + " outside [" + std::to_string(min_value) +
                             ", " + std::to_string(max_value) + "]");
  }
  return value;
}

constexpr const char* kSurveyHeader =
    "subject,age,gender,profession,adaptive,static";

}  // namespace

std::vector<SurveyRecord> parse_survey_csv(std::istream& in,
                                           const std::string& source_name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(source_name + ": empty file, expected header '" +
                             kSurveyHeader + "'");
  }
  if (strip_cr(line) != kSurveyHeader) {
    throw std::runtime_error(source_name + ": bad header '" + strip_cr(line) +
                             "', expected '" + kSurveyHeader + "'");
  }

  std::vector<SurveyRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;

    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 6) {
      throw std::runtime_error(source_name + ": row " +
                               std::to_string(line_no) +
                               ": expected 6 fields, got " +
                               std::to_string(fields.size()));
    }

    SurveyRecord record;
    record.subject = parse_int(source_name, line_no, 1, fields[0], 1, 1 << 30);
    record.age = parse_int(source_name, line_no, 2, fields[1], 1, 150);
    if (fields[2] == "M") {
      record.gender = Gender::Male;
    } else if (fields[2] == "F") {
      record.gender = Gender::Female;
    } else {
      throw std::runtime_error(source_name + ": row " +
                               std::to_string(line_no) +
                               ", column 3: gender must be M or F, got '" +
                               fields[2] + "'");
    }
    record.profession = fields[3];
    record.adaptive_rating =
        parse_int(source_name, line_no, 5, fields[4], 1, 3);
    record.static_rating = parse_int(source_name, line_no, 6, fields[5], 1, 3);
    records.push_back(std::move(record));
  }

  if (records.empty()) {
    throw std::runtime_error(source_name + ": no survey records");
  }
  return records;
}

std::vector<SurveyRecord> load_survey_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open survey: " + path.string());
  }
  return parse_survey_csv(in, path.filename().string());
}

std::string format_survey_report(const std::vector<SurveyRecord>& records,
                                 const SurveySummary& summary) {
  std::ostringstream out;
  char line[160];

  out << "subject  age  gender  profession      adaptive  static\n";
  for (const SurveyRecord& r : records) {
    std::snprintf(line, sizeof line, "%7d  %3d  %6s  %-14s  %8d  %6d\n",
                  r.subject, r.age, r.gender == Gender::Male ? "M" : "F",
                  r.profession.c_str(), r.adaptive_rating, r.static_rating);
    out << line;
  }

  out << "\napproach  dislike  normal  like  like%\n";
  const auto print_row = [&](const char* name, const RatingCounts& c) {
    std::snprintf(line, sizeof line, "%-8s  %7zu  %6zu  %4zu  %4d\n", name,
                  c.dislike, c.normal, c.like, c.like_pct);
    out << line;
  };
  print_row("adaptive", summary.adaptive);
  print_row("static", summary.static_music);
  return out.str();
}

std::string summary_to_json(const SurveySummary& summary) {
  const auto counts_json = [](const RatingCounts& c) {
    return nlohmann::json{{"dislike", c.dislike},
                          {"normal", c.normal},
                          {"like", c.like},
                          {"like_pct", c.like_pct}};
  };
  const nlohmann::json j = {{"total", summary.total},
                            {"adaptive", counts_json(summary.adaptive)},
                            {"static", counts_json(summary.static_music)}};
  return j.dump(2);
}

}  // namespace adamus
