#include "rotortrack/pipeline/stages.hpp"

#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "rotortrack/autoencoder/serialize.hpp"
#include "rotortrack/autoencoder/train.hpp"
#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"
#include "rotortrack/synthgen/synthgen.hpp"
#include "rotortrack/trackdata/labels.hpp"
#include "rotortrack/trackdata/registration.hpp"
#include "rotortrack/trackdata/window.hpp"

namespace rotortrack {

namespace fs = std::filesystem;

void require_files(std::initializer_list<fs::path> paths) {
  for (const auto& p : paths) {
    if (!fs::is_regular_file(p)) throw IoError("missing input file: " + p.string());
  }
}

void log_line(const PipelineConfig& config, std::string_view message) {
  fs::create_directories(config.paths.out_dir);
  std::ofstream log(config.paths.out_dir / kLogFile, std::ios::app);
  auto now = std::chrono::system_clock::now();
  log << fmt::format("{:%Y-%m-%dT%H:%M:%S}Z {}\n", fmt::gmtime(std::chrono::system_clock::to_time_t(now)), message);
}

namespace {

fs::path out(const PipelineConfig& c, std::string_view name) { return c.paths.out_dir / name; }

std::vector<std::string> read_lines(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::optional<FeatureWindow> window_for(const Track& track, const std::map<std::string, Runway>& runways) {
  const Runway* rwy = select_runway(track, runways);
  if (!rwy) return std::nullopt;
  auto outcome = window_arrival(track, *rwy);
  if (!outcome.ok()) return std::nullopt;
  return featurize(*outcome.window, *rwy);
}

}  // namespace

SynthSummary run_synth(const PipelineConfig& config) {
  config.scenario.check();
  auto scenario = generate(config.scenario);
  write_scenario(scenario, config.paths.out_dir);
  log_line(config, fmt::format("synth: {} tracks, seed {}", scenario.tracks.size(), config.scenario.seed));
  return {scenario.tracks.size(), scenario.registration.size()};
}

TrainSummary run_train(const PipelineConfig& config) {
  const auto& p = config.paths;
  require_files({p.resolve(p.tracks), p.resolve(p.runways), p.resolve(p.labels)});
  config.check();
  auto tracks = load_tracks(p.resolve(p.tracks), config.on_bad).tracks;
  auto runways = load_runways(p.resolve(p.runways));
  auto labels = load_labels(p.resolve(p.labels));

  std::vector<FeatureWindow> windows;
  std::string ids;
  for (const auto& t : tracks) {
    if (windows.size() == config.train_count) break;
    auto it = labels.find(t.track_id);
    if (it == labels.end() || it->second != kHelicopterClass) continue;
    auto w = window_for(t, runways);
    if (!w) continue;
    w->tag = WindowTag::helicopter;
    windows.push_back(std::move(*w));
    ids += t.track_id + "\n";
  }
  if (windows.size() < config.train_count) {
    log_line(config, fmt::format("train: only {} usable helicopter tracks, wanted {}", windows.size(),
                                 config.train_count));
  }

  auto result = train(Autoencoder::build(config.model), windows, config.train);
  save_model(result.model, p.resolve(p.model));
  std::string history = "epoch,train_mae,val_mae\n";
  for (const auto& e : result.history) {
    history += fmt::format("{},{},{}\n", e.epoch, csv::number(e.train_mae), csv::number(e.val_mae));
  }
  write_atomic(out(config, kLossHistoryFile), history);
  write_atomic(out(config, kTrainingIdsFile), ids);

  TrainSummary s;
  s.windows = windows.size();
  s.epochs_run = result.history.size();
  s.best_epoch = result.best_epoch;
  s.first_train_mae = result.history.front().train_mae;
  s.final_train_mae = result.history.back().train_mae;
  s.best_val_mae = result.history[result.best_epoch - 1].val_mae;
  log_line(config, fmt::format("train: {} windows, {} epochs, best epoch {}", s.windows, s.epochs_run, s.best_epoch));
  return s;
}

std::vector<FeatureWindow> training_windows(const PipelineConfig& config) {
  const auto& p = config.paths;
  auto ids_path = out(config, kTrainingIdsFile);
  require_files({ids_path, p.resolve(p.tracks), p.resolve(p.runways)});
  auto ids = read_lines(ids_path);
  auto tracks = load_tracks(p.resolve(p.tracks), config.on_bad).tracks;
  auto runways = load_runways(p.resolve(p.runways));
  std::unordered_map<std::string, const Track*> by_id;
  for (const auto& t : tracks) by_id.emplace(t.track_id, &t);
  std::vector<FeatureWindow> windows;
  for (const auto& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw ParseError("training track '" + id + "' is not in the tracks file");
    auto w = window_for(*it->second, runways);
    if (!w) throw InvalidArgument("training track '" + id + "' no longer passes windowing");
    w->tag = WindowTag::helicopter;
    windows.push_back(std::move(*w));
  }
  return windows;
}

CalibrateSummary run_calibrate(const PipelineConfig& config) {
  const auto& p = config.paths;
  require_files({p.resolve(p.model), out(config, kTrainingIdsFile), p.resolve(p.tracks), p.resolve(p.runways)});
  auto model = load_model(p.resolve(p.model));
  auto windows = training_windows(config);
  auto maes = reconstruction_errors(model, windows);

  Thresholds t;
  t.percentile = config.percentile;
  t.delta = calibrate(maes, config.percentile);
  t.runway_delta = config.runway_delta;
  t.check();
  write_atomic(p.resolve(p.thresholds), thresholds_to_json(t));

  std::string table = "track_id,mae\n";
  for (std::size_t i = 0; i < windows.size(); ++i) {
    table += csv::join({windows[i].source_track_id, csv::number(maes[i])}) + "\n";
  }
  write_atomic(out(config, kTrainingMaeFile), table);
  write_atomic(out(config, kHistogramFile), histogram_csv(histogram(maes, config.histogram_bins)));
  log_line(config, fmt::format("calibrate: delta {} at percentile {}", csv::number(t.delta), t.percentile));
  return {t, maes.size()};
}

ClassifySummary run_classify(const PipelineConfig& config) {
  const auto& p = config.paths;
  require_files({p.resolve(p.model), p.resolve(p.thresholds), p.resolve(p.tracks), p.resolve(p.runways)});
  auto model = load_model(p.resolve(p.model));
  auto thresholds = thresholds_from_json(read_text(p.resolve(p.thresholds)));
  auto tracks = load_tracks(p.resolve(p.tracks), config.on_bad).tracks;
  auto runways = load_runways(p.resolve(p.runways));

  std::unordered_set<std::string> training;
  if (fs::is_regular_file(out(config, kTrainingIdsFile))) {
    for (auto& id : read_lines(out(config, kTrainingIdsFile))) training.insert(std::move(id));
  }
  std::vector<Track> held_out;
  ClassifySummary s;
  for (auto& t : tracks) {
    if (training.contains(t.track_id)) {
      ++s.skipped_training;
    } else {
      held_out.push_back(std::move(t));
    }
  }
  auto results = classify_all(model, thresholds, held_out, runways, config.runway_score);
  save_results(p.resolve(p.results), results);

  s.classified = results.size();
  for (const auto& r : results) {
    if (r.pred_is_helicopter) ++s.predicted_helicopters;
    if (!r.mae) ++s.unclassifiable;
  }
  log_line(config, fmt::format("classify: {} tracks, {} helicopters, {} unclassifiable", s.classified,
                               s.predicted_helicopters, s.unclassifiable));
  return s;
}

ValidateSummary run_validate(const PipelineConfig& config) {
  const auto& p = config.paths;
  require_files({p.resolve(p.results), p.resolve(p.tracks), p.resolve(p.registration), p.resolve(p.helicopter_types),
                 p.resolve(p.pseudo_types)});
  auto results = load_results(p.resolve(p.results));
  auto tracks = load_tracks(p.resolve(p.tracks), config.on_bad).tracks;
  auto registration = load_registration(p.resolve(p.registration), config.on_bad);
  auto heli_types = load_type_list(p.resolve(p.helicopter_types));
  auto pseudo = load_type_list(p.resolve(p.pseudo_types));

  auto records = join_registration(results, tracks, registration.table, heli_types, pseudo);
  ValidateSummary s;
  s.registration_metrics = confusion_metrics(records);
  std::string metrics = "metric,value\n" + metrics_csv(s.registration_metrics, "registration_");
  if (fs::is_regular_file(p.resolve(p.labels))) {
    auto labels = load_labels(p.resolve(p.labels));
    s.label_metrics = confusion_metrics(records, labels);
    s.baseline_label_metrics = baseline_metrics(records, labels);
    metrics += metrics_csv(*s.label_metrics, "label_");
    metrics += metrics_csv(*s.baseline_label_metrics, "baseline_label_");
  }
  s.venn = venn_compare(records);
  auto pseudo_rows = resolve_pseudo_types(records, pseudo);
  s.pseudo_rows = pseudo_rows.size();

  write_atomic(out(config, kValidationFile), validation_to_csv(records));
  write_atomic(out(config, kVennCsvFile), venn_csv(s.venn));
  write_atomic(out(config, kVennTextFile), venn_text(s.venn));
  write_atomic(out(config, kPseudoResolvedFile), pseudo_types_csv(pseudo_rows));
  write_atomic(out(config, kMetricsFile), metrics);
  log_line(config, fmt::format("validate: {} records, venn ({}, {}, {})", records.size(), s.venn.both,
                               s.venn.autoencoder_only, s.venn.baseline_only));
  return s;
}

std::string run_report(const PipelineConfig& config) {
  const auto& p = config.paths;
  require_files({p.resolve(p.thresholds), p.resolve(p.results), out(config, kLossHistoryFile),
                 out(config, kTrainingMaeFile), out(config, kMetricsFile), out(config, kVennTextFile)});
  auto thresholds = thresholds_from_json(read_text(p.resolve(p.thresholds)));
  auto results = load_results(p.resolve(p.results));
  auto history = csv::read(out(config, kLossHistoryFile), "epoch,train_mae,val_mae");
  std::vector<double> maes;
  for (const auto& row : csv::read(out(config, kTrainingMaeFile), "track_id,mae")) {
    maes.push_back(std::stod(row.fields.at(1)));
  }

  std::size_t positive = 0, unclassifiable = 0;
  for (const auto& r : results) {
    positive += r.pred_is_helicopter;
    unclassifiable += !r.mae;
  }

  std::string text;
  text += "Helicopter identification report\n\n";
  text += "Training\n";
  text += fmt::format("  windows          : {}\n", maes.size());
  text += fmt::format("  epochs run       : {}\n", history.size());
  if (!history.empty()) {
    text += fmt::format("  train MAE        : {} -> {}\n", history.front().fields.at(1), history.back().fields.at(1));
  }
  text += "\nThresholds\n";
  text += fmt::format("  MAE delta        : {} (percentile {})\n", csv::number(thresholds.delta),
                      csv::number(thresholds.percentile));
  text += fmt::format("  runway delta     : {}\n", csv::number(thresholds.runway_delta));
  text += "\nTraining MAE histogram\n" + histogram_text(histogram(maes, config.histogram_bins));
  text += "\nClassification\n";
  text += fmt::format("  tracks           : {}\n", results.size());
  text += fmt::format("  helicopters      : {}\n", positive);
  text += fmt::format("  unclassifiable   : {}\n", unclassifiable);
  text += "\nMetrics\n";
  for (const auto& row : csv::read(out(config, kMetricsFile), "metric,value")) {
    text += fmt::format("  {:<30} {}\n", row.fields.at(0), row.fields.at(1));
  }
  text += "\n" + read_text(out(config, kVennTextFile));
  write_atomic(out(config, kReportFile), text);
  log_line(config, "report written");
  return text;
}

}  // namespace rotortrack
