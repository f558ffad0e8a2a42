#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace adamus {

enum class Gender { Male, Female };

// One survey row: both approaches rated on the 1/2/3 scale
// (1 dislike, 2 normal, 3 like).
struct SurveyRecord {
  int subject;
  int age;
  Gender gender;
  std::string profession;
  int adaptive_rating;
  int static_rating;
};

struct RatingCounts {
  std::size_t dislike = 0;
  std::size_t normal = 0;
  std::size_t like = 0;
  int like_pct = 0;  // round-half-up integer percent
};

struct SurveySummary {
  std::size_t total = 0;
  RatingCounts adaptive;
  RatingCounts static_music;
};

// Counts ratings per approach and derives the like-percentage. Throws
// std::invalid_argument on an empty record list or an out-of-scale rating.
SurveySummary aggregate(const std::vector<SurveyRecord>& records);

// CSV with header `subject,age,gender,profession,adaptive,static`.
std::vector<SurveyRecord> load_survey_csv(const std::filesystem::path& path);
std::vector<SurveyRecord> parse_survey_csv(std::istream& in,
                                           const std::string& source_name);

// Plain-text report: the records followed by the per-approach tallies.
std::string format_survey_report(const std::vector<SurveyRecord>& records,
                                 const SurveySummary& summary);

// {"adaptive": {"dislike":…,"normal":…,"like":…,"like_pct":…}, "static": {…}}
std::string summary_to_json(const SurveySummary& summary);

}  // namespace adamus
