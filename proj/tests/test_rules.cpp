#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adamus/rng.h"
#include "adamus/rules.h"
#include "test_util.h"

using namespace adamus;

TEST_CASE("default ruleset encodes the threshold criteria exactly") {
  const RuleSet rs = default_ruleset();
  REQUIRE(rs.rules.size() == 3);
  CHECK(rs.fallback == MoodCategory::Angry);

  const Rule& sad = rs.rules[0];
  CHECK(sad.mood == MoodCategory::Sad);
  REQUIRE(sad.clauses.size() == 4);
  CHECK(sad.clauses[0] == ThresholdClause{Attribute::Life, Comparator::LessEq, 1.0});
  CHECK(sad.clauses[1] == ThresholdClause{Attribute::Energy, Comparator::LessEq, 20.0});
  CHECK(sad.clauses[2] == ThresholdClause{Attribute::Score, Comparator::Less, 2000.0});
  CHECK(sad.clauses[3] == ThresholdClause{Attribute::Level, Comparator::LessEq, 2.0});

  const Rule& happy = rs.rules[1];
  CHECK(happy.mood == MoodCategory::Happy);
  REQUIRE(happy.clauses.size() == 4);
  CHECK(happy.clauses[0] == ThresholdClause{Attribute::Life, Comparator::GreaterEq, 4.0});
  CHECK(happy.clauses[1] == ThresholdClause{Attribute::Energy, Comparator::GreaterEq, 80.0});
  CHECK(happy.clauses[2] == ThresholdClause{Attribute::Score, Comparator::Less, 8000.0});
  CHECK(happy.clauses[3] == ThresholdClause{Attribute::Level, Comparator::GreaterEq, 8.0});

  const Rule& normal = rs.rules[2];
  CHECK(normal.mood == MoodCategory::Normal);
  REQUIRE(normal.clauses.size() == 4);
  CHECK(normal.clauses[0] == ThresholdClause{Attribute::Life, Comparator::LessEq, 3.0});
  CHECK(normal.clauses[1] == ThresholdClause{Attribute::Energy, Comparator::LessEq, 50.0});
  CHECK(normal.clauses[2] == ThresholdClause{Attribute::Score, Comparator::Less, 5000.0});
  CHECK(normal.clauses[3] == ThresholdClause{Attribute::Level, Comparator::Less, 6.0});
}

TEST_CASE("scale_state multiplies each attribute by its factor") {
  const ScalingProfile profile(500.0, 1000.0, 1000.0, 1000.0);
  const GameState scaled =
      scale_state({0.0036, 0.0342, 3.0929, 0.0055}, profile);
  CHECK(scaled.life == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(scaled.energy == doctest::Approx(34.2).epsilon(1e-12));
  CHECK(scaled.score == doctest::Approx(3092.9).epsilon(1e-12));
  CHECK(scaled.level == doctest::Approx(5.5).epsilon(1e-12));

  SUBCASE("identity profile is a no-op") {
    const GameState state(0.25, 7.0, 123.0, 4.5);
    CHECK(scale_state(state, ScalingProfile::identity()) == state);
  }

  SUBCASE("zero state is a fixed point") {
    const GameState zero(0.0, 0.0, 0.0, 0.0);
    CHECK(scale_state(zero, profile) == zero);
  }

  SUBCASE("overflow to non-finite is rejected") {
    const GameState huge(1e308, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(scale_state(huge, profile), std::overflow_error);
  }
}

TEST_CASE("evaluate reproduces the labeled fixture classifications") {
  const RuleSet rs = default_ruleset();
  const ScalingProfile profile = default_scaling();

  CHECK(evaluate({0.0036, 0.0342, 3.0929, 0.0055}, rs, profile) ==
        MoodCategory::Normal);
  // Scaled energy 50.3 misses the normal rule's <= 50 bound.
  CHECK(evaluate({0.0034, 0.0503, 1.9343, 0.0070}, rs, profile) ==
        MoodCategory::Angry);

  for (const LabeledState& row : testutil::labeled_fixture_rows()) {
    CHECK(evaluate(row.state, rs, profile) == row.label);
  }
}

TEST_CASE("evaluate handles constructed states in the scaled domain") {
  const RuleSet rs = default_ruleset();
  const ScalingProfile id = ScalingProfile::identity();

  CHECK(evaluate({0, 0, 0, 0}, rs, id) == MoodCategory::Sad);
  CHECK(evaluate({5, 90, 7000, 9}, rs, id) == MoodCategory::Happy);

  SUBCASE("boundary strictness") {
    // Energy bound is inclusive...
    CHECK(evaluate({2, 50, 100, 3}, rs, id) == MoodCategory::Normal);
    // ...the score bound is strict...
    CHECK(evaluate({3, 50, 4999, 5.9}, rs, id) == MoodCategory::Normal);
    CHECK(evaluate({3, 50, 5000, 5.9}, rs, id) == MoodCategory::Angry);
    // ...and so is the normal rule's level bound.
    CHECK(evaluate({2, 30, 100, 6}, rs, id) == MoodCategory::Angry);
    CHECK(evaluate({1, 20, 1999, 2}, rs, id) == MoodCategory::Sad);
  }
}

namespace {

GameState random_scaled_state(Xoshiro256pp& rng) {
  return {rng.next_in_range(0.0, 10.0), rng.next_in_range(0.0, 120.0),
          rng.next_in_range(0.0, 10000.0), rng.next_in_range(0.0, 12.0)};
}

GameState random_normalized_state(Xoshiro256pp& rng) {
  return {rng.next_in_range(0.0, 0.004), rng.next_in_range(0.0, 0.09),
          rng.next_in_range(0.0, 10.0), rng.next_in_range(0.0, 0.01)};
}

}  // namespace

TEST_CASE("evaluate and evaluate_naive agree everywhere") {
  const RuleSet rs = default_ruleset();
  const ScalingProfile id = ScalingProfile::identity();
  const ScalingProfile profile = default_scaling();

  SUBCASE("on the labeled fixture rows") {
    for (const LabeledState& row : testutil::labeled_fixture_rows()) {
      CHECK(evaluate_naive(row.state, rs, profile) == row.label);
    }
  }

  SUBCASE("on 10,000 random states") {
    Xoshiro256pp rng(2024);
    for (int i = 0; i < 5000; ++i) {
      const GameState scaled = random_scaled_state(rng);
      CHECK(evaluate(scaled, rs, id) == evaluate_naive(scaled, rs, id));
      const GameState normalized = random_normalized_state(rng);
      CHECK(evaluate(normalized, rs, profile) ==
            evaluate_naive(normalized, rs, profile));
    }
  }

  SUBCASE("on every per-attribute bound combination") {
    const double lifes[] = {0.0, 1.0, 3.0, 4.0, 10.0};
    const double energies[] = {0.0, 20.0, 50.0, 80.0, 100.0};
    const double scores[] = {0.0, 2000.0, 5000.0, 8000.0, 10000.0};
    const double levels[] = {0.0, 2.0, 6.0, 8.0, 10.0};
    for (double life : lifes)
      for (double energy : energies)
        for (double score : scores)
          for (double level : levels) {
            const GameState state(life, energy, score, level);
            CHECK(evaluate(state, rs, id) == evaluate_naive(state, rs, id));
          }
  }

  SUBCASE("boundary inclusion: scaled energy exactly 50 is normal") {
    const GameState state(2.0, 50.0, 100.0, 3.0);
    CHECK(evaluate(state, rs, id) == MoodCategory::Normal);
    CHECK(evaluate_naive(state, rs, id) == MoodCategory::Normal);
  }
}

TEST_CASE("scaling equivalence: pre-scaling then identity changes nothing") {
  const RuleSet rs = default_ruleset();
  Xoshiro256pp rng(77);
  for (int i = 0; i < 500; ++i) {
    const GameState state = random_normalized_state(rng);
    const ScalingProfile profile(rng.next_in_range(1.0, 2000.0),
                                 rng.next_in_range(1.0, 2000.0),
                                 rng.next_in_range(1.0, 2000.0),
                                 rng.next_in_range(1.0, 2000.0));
    CHECK(evaluate(state, rs, profile) ==
          evaluate(scale_state(state, profile), rs,
                   ScalingProfile::identity()));
  }
}

TEST_CASE("first-match dominance: the sad region never reports normal") {
  const RuleSet rs = default_ruleset();
  const ScalingProfile id = ScalingProfile::identity();
  Xoshiro256pp rng(99);
  for (int i = 0; i < 1000; ++i) {
    const GameState state(rng.next_in_range(0.0, 1.0),
                          rng.next_in_range(0.0, 20.0),
                          rng.next_in_range(0.0, 2000.0),
                          rng.next_in_range(0.0, 2.0));
    CHECK(evaluate(state, rs, id) == MoodCategory::Sad);
  }
  // The region corners stay sad too.
  CHECK(evaluate({1.0, 20.0, 1999.999, 2.0}, rs, id) == MoodCategory::Sad);
}

TEST_CASE("calibrate_scaling recovers the default profile from the fixtures") {
  const std::vector<LabeledState> rows = testutil::labeled_fixture_rows();
  const RuleSet rs = default_ruleset();
  const std::vector<ScalingProfile> result =
      calibrate_scaling(rows, rs, default_grid());

  REQUIRE_FALSE(result.empty());
  CHECK(std::find(result.begin(), result.end(), default_scaling()) !=
        result.end());

  // Every returned profile must reproduce all labels...
  for (const ScalingProfile& profile : result) {
    for (const LabeledState& row : rows) {
      CHECK(evaluate(row.state, rs, profile) == row.label);
    }
  }
  // ...and every rejected grid point must miss at least one.
  const CalibrationGrid grid = default_grid();
  std::size_t failures = 0;
  for (double kl : grid.life)
    for (double ke : grid.energy)
      for (double ks : grid.score)
        for (double kv : grid.level) {
          const ScalingProfile profile(kl, ke, ks, kv);
          if (std::find(result.begin(), result.end(), profile) !=
              result.end()) {
            continue;
          }
          bool missed = false;
          for (const LabeledState& row : rows) {
            if (evaluate(row.state, rs, profile) != row.label) {
              missed = true;
              break;
            }
          }
          if (missed) ++failures;
        }
  CHECK(failures == 625 - result.size());
}

TEST_CASE("calibrate_scaling edge cases") {
  const RuleSet rs = default_ruleset();
  const GameState zero(0, 0, 0, 0);

  SUBCASE("zeros labeled angry admit no profile") {
    const std::vector<ScalingProfile> result =
        calibrate_scaling({{zero, MoodCategory::Angry}}, rs, default_grid());
    CHECK(result.empty());
  }

  SUBCASE("zeros labeled sad admit the whole grid") {
    const std::vector<ScalingProfile> result =
        calibrate_scaling({{zero, MoodCategory::Sad}}, rs, default_grid());
    CHECK(result.size() == 625);
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(calibrate_scaling({}, rs, default_grid()),
                    std::invalid_argument);
    CalibrationGrid empty = default_grid();
    empty.score.clear();
    CHECK_THROWS_AS(calibrate_scaling({{zero, MoodCategory::Sad}}, rs, empty),
                    std::invalid_argument);
  }
}

TEST_CASE("validate_ruleset") {
  SUBCASE("default ruleset: no errors, one containment note") {
    const std::vector<Diagnostic> diags = validate_ruleset(default_ruleset());
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Diagnostic::Severity::Note);
    CHECK(diags[0].message.find("contained") != std::string::npos);
    CHECK(diags[0].message.find("rule 0 (sad)") != std::string::npos);
    CHECK(diags[0].message.find("rule 2 (normal)") != std::string::npos);
  }

  SUBCASE("non-finite bound is an error") {
    RuleSet rs = default_ruleset();
    rs.rules[1].clauses[2].bound = std::numeric_limits<double>::infinity();
    const auto diags = validate_ruleset(rs);
    CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Error &&
             d.message.find("non-finite") != std::string::npos;
    }));
  }

  SUBCASE("empty clause list is an error") {
    RuleSet rs = default_ruleset();
    rs.rules[0].clauses.clear();
    const auto diags = validate_ruleset(rs);
    CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Error &&
             d.message.find("no clauses") != std::string::npos;
    }));
  }

  SUBCASE("fallback-only ruleset is valid, with a note") {
    const RuleSet rs{{}, MoodCategory::Normal};
    const auto diags = validate_ruleset(rs);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Diagnostic::Severity::Note);
    CHECK(diags[0].message.find("fallback-only") != std::string::npos);
  }

  SUBCASE("a later rule inside an earlier region is unreachable") {
    RuleSet rs = default_ruleset();
    std::swap(rs.rules[0], rs.rules[2]);  // normal first, sad now shadowed
    const auto diags = validate_ruleset(rs);
    CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Warning &&
             d.message.find("unreachable") != std::string::npos;
    }));
  }

  SUBCASE("duplicate moods get a note") {
    RuleSet rs = default_ruleset();
    rs.rules.push_back(
        {MoodCategory::Sad, {{Attribute::Life, Comparator::Greater, 100.0}}});
    const auto diags = validate_ruleset(rs);
    CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
      return d.severity == Diagnostic::Severity::Note &&
             d.message.find("appears in 2 rules") != std::string::npos;
    }));
  }
}

TEST_CASE("ruleset file round-trips and matches the shipped default") {
  SUBCASE("shipped file equals the embedded defaults") {
    const RulesetFile file =
        load_ruleset_file(testutil::data_file("ruleset.json"));
    CHECK(file.ruleset == default_ruleset());
    REQUIRE(file.scaling.has_value());
    CHECK(*file.scaling == default_scaling());
  }

  SUBCASE("save/load round trip") {
    const auto path = testutil::temp_file("adamus_ruleset_roundtrip.json");
    const RulesetFile file{default_ruleset(), default_scaling()};
    save_ruleset_file(file, path);
    const RulesetFile loaded = load_ruleset_file(path);
    CHECK(loaded.ruleset == file.ruleset);
    CHECK(loaded.scaling == file.scaling);
  }

  SUBCASE("malformed input is rejected with context") {
    const auto path = testutil::temp_file("adamus_ruleset_bad.json");
    {
      std::ofstream out(path);
      out << "{\"rules\": [{\"mood\": \"gloomy\", \"clauses\": "
             "[{\"attr\": \"life\", \"cmp\": \"le\", \"bound\": 1}]}], "
             "\"fallback\": \"angry\"}";
    }
    CHECK_THROWS_WITH_AS(load_ruleset_file(path),
                         doctest::Contains("unknown mood"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_ruleset_file("/nonexistent/ruleset.json"),
                    std::runtime_error);
  }
}
