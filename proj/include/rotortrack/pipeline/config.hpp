#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>

#include "rotortrack/autoencoder/model.hpp"
#include "rotortrack/autoencoder/train.hpp"
#include "rotortrack/runwayscore/score.hpp"
#include "rotortrack/synthgen/synthgen.hpp"
#include "rotortrack/trackdata/io.hpp"

namespace rotortrack {

/// File locations. Relative paths are resolved against out_dir.
struct PipelinePaths {
  std::filesystem::path out_dir = ".";
  std::filesystem::path tracks = kTracksFile;
  std::filesystem::path runways = kRunwaysFile;
  std::filesystem::path registration = kRegistrationFile;
  std::filesystem::path labels = kLabelsFile;
  std::filesystem::path helicopter_types = kHelicopterTypesFile;
  std::filesystem::path pseudo_types = kPseudoTypesFile;
  std::filesystem::path model = "model.rtae";
  std::filesystem::path thresholds = "thresholds.json";
  std::filesystem::path results = "results.csv";

  std::filesystem::path resolve(const std::filesystem::path& p) const;
};

struct PipelineConfig {
  PipelineConfig() { apply_seed(seed); }

  PipelinePaths paths;
  // Seeds the generator, the weight initialization and the training shuffle.
  std::uint64_t seed = 7;
  OnBadRecord on_bad = OnBadRecord::skip;

  ScenarioSpec scenario;
  AutoencoderSpec model;
  TrainConfig train;
  std::size_t train_count = 80;  // helicopter tracks used for training

  double percentile = 80;
  std::size_t histogram_bins = 20;
  double runway_delta = 0.5;
  RunwayScoreParams runway_score;

  /// Push `seed` into the scenario, model and trainer.
  void apply_seed(std::uint64_t s);
  void check() const;
};

/// Every key is optional; unknown keys are rejected so typos do not pass silently.
PipelineConfig config_from_json(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);
/// Full config with every default filled in.
std::string config_to_json(const PipelineConfig& config);

}  // namespace rotortrack
