#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rotortrack/autoencoder/model.hpp"

namespace rotortrack {

struct TrainConfig {
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  neural::AdamConfig adam;
  double validation_fraction = 0.2;
  std::size_t patience = 20;  // epochs without validation improvement before stopping
  std::uint64_t seed = 0;

  void check() const;
};

inline constexpr std::size_t kMinTrainingWindows = 32;

struct EpochLoss {
  std::size_t epoch = 0;  // 1-based
  double train_mae = 0.0;
  double val_mae = 0.0;
};

struct TrainResult {
  Autoencoder model;
  std::vector<EpochLoss> history;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  // Positions in the input list.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
};

/// Fit `model` to raw helicopter-tagged windows.
///
/// Holds out a seeded validation split, fits the normalization on the training
/// split and stores it in the returned model, then runs Adam on batch MAE.
/// Losses in the history come from a full evaluation pass after each epoch.
/// The returned weights are the ones with the lowest validation MAE.
///
/// Throws InvalidArgument when any window is not tagged helicopter,
/// TooFewValues below kMinTrainingWindows, TrainingDiverged on a non-finite loss.
TrainResult train(Autoencoder model, std::span<const FeatureWindow> windows, const TrainConfig& config);

/// Mean of reconstruction_errors over a window set.
double mean_reconstruction_error(const Autoencoder& model, std::span<const FeatureWindow> raw_windows);

}  // namespace rotortrack
