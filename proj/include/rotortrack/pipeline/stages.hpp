#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rotortrack/identify/identify.hpp"
#include "rotortrack/pipeline/config.hpp"
#include "rotortrack/validate/validate.hpp"

namespace rotortrack {

// Each stage reads its inputs from files, checks every input path before
// doing any work (IoError naming the missing path), and writes its outputs
// atomically under paths.out_dir. Stages share no in-memory state.

inline constexpr std::string_view kLossHistoryFile = "loss_history.csv";
inline constexpr std::string_view kTrainingIdsFile = "training_ids.txt";
inline constexpr std::string_view kTrainingMaeFile = "training_mae.csv";
inline constexpr std::string_view kHistogramFile = "mae_histogram.csv";
inline constexpr std::string_view kValidationFile = "validation.csv";
inline constexpr std::string_view kVennCsvFile = "venn.csv";
inline constexpr std::string_view kVennTextFile = "venn.txt";
inline constexpr std::string_view kPseudoResolvedFile = "pseudo_types_resolved.csv";
inline constexpr std::string_view kMetricsFile = "metrics.csv";
inline constexpr std::string_view kReportFile = "report.txt";
inline constexpr std::string_view kLogFile = "rotortrack.log";

struct SynthSummary {
  std::size_t tracks = 0;
  std::size_t registration_rows = 0;
};

struct TrainSummary {
  std::size_t windows = 0;
  std::size_t epochs_run = 0;
  std::size_t best_epoch = 0;
  double first_train_mae = 0;
  double final_train_mae = 0;
  double best_val_mae = 0;
};

struct CalibrateSummary {
  Thresholds thresholds;
  std::size_t samples = 0;
};

struct ClassifySummary {
  std::size_t classified = 0;
  std::size_t predicted_helicopters = 0;
  std::size_t unclassifiable = 0;
  std::size_t skipped_training = 0;
};

struct ValidateSummary {
  ConfusionMetrics registration_metrics;
  std::optional<ConfusionMetrics> label_metrics;
  std::optional<ConfusionMetrics> baseline_label_metrics;
  VennCounts venn;
  std::size_t pseudo_rows = 0;
};

SynthSummary run_synth(const PipelineConfig& config);

/// Trains on the first train_count tracks labeled helicopter in the labels
/// sidecar (in tracks-file order) that pass windowing.
TrainSummary run_train(const PipelineConfig& config);

/// Percentile of the reconstruction errors of the training windows.
CalibrateSummary run_calibrate(const PipelineConfig& config);

/// Classifies every track not used for training.
ClassifySummary run_classify(const PipelineConfig& config);

/// Label-based metrics are added when the labels file exists.
ValidateSummary run_validate(const PipelineConfig& config);

/// Plain-text summary built from the other stages' files.
std::string run_report(const PipelineConfig& config);

/// Append a timestamped line to the log file in out_dir. Timestamps live only here.
void log_line(const PipelineConfig& config, std::string_view message);

/// Throws IoError naming the first path that does not exist.
void require_files(std::initializer_list<std::filesystem::path> paths);

/// Training windows for the tracks listed in training_ids.txt, in that order.
std::vector<FeatureWindow> training_windows(const PipelineConfig& config);

}  // namespace rotortrack
