// adamus: classify game telemetry into mood categories, simulate sessions,
// and render the matching procedural soundtrack.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adamus/core.h"
#include "adamus/rules.h"
#include "adamus/session.h"
#include "adamus/survey.h"
#include "adamus/synth.h"
#include "adamus/wav.h"

namespace {

using namespace adamus;

struct Config {
  std::string ruleset_path;
  std::string scaling_spec;
  std::uint64_t seed = 42;
  int sample_rate = 44100;
  double segment_seconds = 0.5;
  double overlap_seconds = 0.1;

  RuleSet ruleset = default_ruleset();
  ScalingProfile profile = default_scaling();
};

std::vector<double> parse_number_list(const std::string& spec,
                                      const char* what) {
  std::vector<double> values;
  std::string::size_type start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string cell = spec.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t consumed = 0;
      values.push_back(std::stod(cell, &consumed));
      if (consumed != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad number '" + cell +
                                  "' in '" + spec + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

// Applies --ruleset / --scaling on top of the embedded defaults. A scaling
// stored in the ruleset file wins over the default; the flag wins over both.
void resolve_config(Config& config) {
  if (!config.ruleset_path.empty()) {
    RulesetFile file = load_ruleset_file(config.ruleset_path);
    config.ruleset = std::move(file.ruleset);
    if (file.scaling) config.profile = *file.scaling;
  }
  if (!config.scaling_spec.empty()) {
    const std::vector<double> k =
        parse_number_list(config.scaling_spec, "--scaling");
    if (k.size() != 4) {
      throw std::invalid_argument(
          "--scaling: expected 4 factors (life,energy,score,level)");
    }
    config.profile = ScalingProfile(k[0], k[1], k[2], k[3]);
  }
}

void cmd_classify(const Config& config, const std::string& csv_in,
                  const std::string& csv_out) {
  Dataset dataset = load_csv(csv_in);
  std::vector<MoodCategory> moods;
  moods.reserve(dataset.rows.size());
  for (const GameState& row : dataset.rows) {
    moods.push_back(evaluate(row, config.ruleset, config.profile));
  }
  for (MoodCategory mood : moods) {
    std::cout << mood_name(mood) << '\n';
  }
  if (!csv_out.empty()) {
    dataset.labels = std::move(moods);
    save_csv(dataset, csv_out);
  }
}

void print_timeline(const MoodTimeline& timeline) {
  std::cout << "timeline:\nrow,mood\n";
  for (const TimelineEntry& entry : timeline.entries) {
    std::cout << entry.row << ',' << mood_name(entry.mood) << '\n';
  }
  std::cout << "\ntransitions:\nrow,from,to\n";
  for (const MoodTransition& t : timeline.transitions) {
    std::cout << t.row << ',' << mood_name(t.from) << ',' << mood_name(t.to)
              << '\n';
  }
}

void print_stats(const TimelineStats& stats) {
  char line[96];
  std::cout << "\nstats:\nmood,rows,fraction\n";
  for (MoodCategory mood : kAllMoods) {
    std::snprintf(line, sizeof line, "%s,%zu,%g\n",
                  std::string(mood_name(mood)).c_str(), stats.count(mood),
                  stats.fraction(mood));
    std::cout << line;
  }
  std::cout << "transitions," << stats.transitions << '\n';
}

void cmd_simulate(const Config& config, std::size_t rows,
                  const std::string& ranges_spec) {
  AttributeRanges ranges = kDefaultRanges;
  if (!ranges_spec.empty()) {
    const std::vector<double> hi = parse_number_list(ranges_spec, "--ranges");
    if (hi.size() != 4 ||
        std::any_of(hi.begin(), hi.end(), [](double v) { return v <= 0.0; })) {
      throw std::invalid_argument(
          "--ranges: expected 4 positive upper bounds "
          "(life,energy,score,level)");
    }
    ranges = {hi[0], hi[1], hi[2], hi[3]};
  }

  const Dataset dataset = generate_dataset(config.seed, rows, ranges);
  std::cout << "dataset (seed=" << config.seed << ", rows=" << rows << "):\n";
  write_csv(dataset, std::cout);
  std::cout << '\n';

  const MoodTimeline timeline =
      run_session(dataset, config.ruleset, config.profile);
  print_timeline(timeline);
  print_stats(timeline_stats(timeline));
}

nlohmann::json timeline_sidecar(const Config& config,
                                const std::string& source,
                                const MoodTimeline& timeline,
                                long long overlap_samples,
                                std::size_t total_samples) {
  nlohmann::json entries = nlohmann::json::array();
  for (const TimelineEntry& entry : timeline.entries) {
    entries.push_back(
        {{"row", entry.row}, {"mood", std::string(mood_name(entry.mood))}});
  }
  nlohmann::json transitions = nlohmann::json::array();
  for (const MoodTransition& t : timeline.transitions) {
    transitions.push_back({{"row", t.row},
                           {"from", std::string(mood_name(t.from))},
                           {"to", std::string(mood_name(t.to))}});
  }

  // Maximal runs of equal moods; one rendered block each.
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t i = 0; i < timeline.entries.size();) {
    std::size_t j = i;
    while (j < timeline.entries.size() &&
           timeline.entries[j].mood == timeline.entries[i].mood) {
      ++j;
    }
    blocks.push_back({{"mood", std::string(mood_name(timeline.entries[i].mood))},
                      {"first_row", i},
                      {"rows", j - i}});
    i = j;
  }

  const std::size_t crossfades = blocks.empty() ? 0 : blocks.size() - 1;
  return {{"source", source},
          {"seed", config.seed},
          {"sample_rate", config.sample_rate},
          {"segment_seconds", config.segment_seconds},
          {"overlap_seconds", config.overlap_seconds},
          {"overlap_samples", overlap_samples},
          {"entries", std::move(entries)},
          {"transitions", std::move(transitions)},
          {"blocks", std::move(blocks)},
          {"crossfades", crossfades},
          {"total_samples", total_samples}};
}

void cmd_render(const Config& config, const std::string& csv_in,
                const std::string& wav_out, std::string timeline_out) {
  const Dataset dataset = load_csv(csv_in);
  const MoodTimeline timeline =
      run_session(dataset, config.ruleset, config.profile);
  const AudioBuffer session =
      render_session(timeline, default_signatures(), config.seed,
                     config.segment_seconds, config.overlap_seconds,
                     config.sample_rate);
  const std::size_t bytes = write_wav(session, wav_out);

  if (timeline_out.empty()) timeline_out = wav_out + ".timeline.json";
  const long long overlap_samples =
      std::llround(config.overlap_seconds * config.sample_rate);
  const nlohmann::json sidecar =
      timeline_sidecar(config, std::filesystem::path(csv_in).filename().string(),
                       timeline, overlap_samples, session.samples.size());
  std::ofstream side(timeline_out);
  if (!side) {
    throw std::runtime_error("cannot write timeline sidecar: " + timeline_out);
  }
  side << sidecar.dump(2) << '\n';

  std::cout << "wrote " << wav_out << " (" << bytes << " bytes, "
            << session.samples.size() << " samples, "
            << sidecar["blocks"].size() << " blocks, "
            << sidecar["crossfades"].get<std::size_t>() << " crossfades)\n"
            << "wrote " << timeline_out << '\n';
}

void cmd_calibrate(const Config& config,
                   const std::vector<std::string>& csv_inputs,
                   const std::string& grid_spec) {
  std::vector<LabeledState> rows;
  for (const std::string& path : csv_inputs) {
    const Dataset dataset = load_csv(path);
    if (!dataset.labels) {
      throw std::runtime_error(path + ": calibration needs a labeled dataset");
    }
    for (std::size_t i = 0; i < dataset.rows.size(); ++i) {
      rows.push_back({dataset.rows[i], (*dataset.labels)[i]});
    }
  }

  CalibrationGrid grid = default_grid();
  if (!grid_spec.empty()) {
    grid = CalibrationGrid::uniform(parse_number_list(grid_spec, "--grid"));
  }
  const std::size_t grid_size =
      grid.life.size() * grid.energy.size() * grid.score.size() *
      grid.level.size();

  const std::vector<ScalingProfile> profiles =
      calibrate_scaling(rows, config.ruleset, grid);
  std::cout << "# profiles consistent with " << rows.size()
            << " labeled rows (grid size " << grid_size << ")\n";
  if (profiles.empty()) {
    std::cout << "no scaling profile in the grid reproduces all labels\n";
    return;
  }
  char line[96];
  for (const ScalingProfile& p : profiles) {
    std::snprintf(line, sizeof line, "%g,%g,%g,%g\n", p.life, p.energy,
                  p.score, p.level);
    std::cout << line;
  }
}

void cmd_survey(const std::string& csv_in, bool as_json) {
  const std::vector<SurveyRecord> records = load_survey_csv(csv_in);
  const SurveySummary summary = aggregate(records);
  if (as_json) {
    std::cout << summary_to_json(summary) << '\n';
  } else {
    std::cout << format_survey_report(records, summary);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adamus: condition-driven adaptive music engine"};
  app.require_subcommand(1);
  app.fallthrough();

  Config config;
  app.add_option("--ruleset", config.ruleset_path,
                 "Rule-set JSON file (default: embedded rules)")
      ->check(CLI::ExistingFile);
  app.add_option("--scaling", config.scaling_spec,
                 "Scaling factors life,energy,score,level");
  app.add_option("--seed", config.seed, "RNG seed (default 42)");
  app.add_option("--sample-rate", config.sample_rate, "Samples per second")
      ->check(CLI::PositiveNumber);
  app.add_option("--segment-seconds", config.segment_seconds,
                 "Length of one tone segment")
      ->check(CLI::PositiveNumber);
  app.add_option("--overlap-seconds", config.overlap_seconds,
                 "Crossfade overlap at mood transitions")
      ->check(CLI::NonNegativeNumber);

  std::string csv_in;
  std::string csv_out;
  std::string wav_out;
  std::string timeline_out;
  std::string grid_spec;
  std::vector<std::string> csv_inputs;
  std::string ranges_spec;
  std::size_t sim_rows = 5;
  bool as_json = false;

  CLI::App* classify =
      app.add_subcommand("classify", "Classify telemetry rows into moods");
  classify->add_option("csv", csv_in, "Input telemetry CSV")->required();
  classify->add_option("-o,--out", csv_out, "Write a labeled copy here");

  CLI::App* simulate =
      app.add_subcommand("simulate", "Generate a session and classify it");
  simulate->add_option("--rows", sim_rows, "Number of telemetry rows")
      ->check(CLI::PositiveNumber);
  simulate->add_option(
      "--ranges", ranges_spec,
      "Generation upper bounds life,energy,score,level (default "
      "0.004,0.09,10,0.01)");

  CLI::App* render =
      app.add_subcommand("render", "Render a session soundtrack to WAV");
  render->add_option("csv", csv_in, "Input telemetry CSV")->required();
  render->add_option("wav", wav_out, "Output WAV path")->required();
  render->add_option("--timeline", timeline_out,
                     "Timeline sidecar path (default: <wav>.timeline.json)");

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Search scaling profiles consistent with labeled data");
  calibrate->add_option("csv", csv_inputs, "Labeled telemetry CSV(s)")
      ->required();
  calibrate->add_option("--grid", grid_spec,
                        "Candidate factors, e.g. 250,500,750,1000,1250");

  CLI::App* survey =
      app.add_subcommand("survey", "Aggregate a listener survey CSV");
  survey->add_option("csv", csv_in, "Survey CSV")->required();
  survey->add_flag("--json", as_json, "Emit machine-readable JSON");

  try {
    app.parse(argc, argv);
    resolve_config(config);

    if (classify->parsed()) {
      cmd_classify(config, csv_in, csv_out);
    } else if (simulate->parsed()) {
      cmd_simulate(config, sim_rows, ranges_spec);
    } else if (render->parsed()) {
      cmd_render(config, csv_in, wav_out, timeline_out);
    } else if (calibrate->parsed()) {
      cmd_calibrate(config, csv_inputs, grid_spec);
    } else if (survey->parsed()) {
      cmd_survey(csv_in, as_json);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
