#include "rotortrack/autoencoder/train.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "rotortrack/error.hpp"
#include "rotortrack/neural/loss.hpp"

namespace rotortrack {

using neural::real;
using neural::Tensor3;

void TrainConfig::check() const {
  if (epochs < 1) throw InvalidArgument("train: epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgument("train: batch size must be >= 1");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    throw InvalidArgument("train: validation fraction must be in (0, 1)");
  }
  if (!(adam.lr > 0.0) || !(adam.epsilon > 0.0) || adam.beta1 < 0.0 || adam.beta1 >= 1.0 ||
      adam.beta2 < 0.0 || adam.beta2 >= 1.0) {
    throw InvalidArgument("train: invalid Adam settings");
  }
}

namespace {

// Fisher-Yates with an explicit index draw so the order does not depend on the
// standard library's distribution implementation.
void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

Tensor3 gather(const Tensor3& all, std::span<const std::size_t> rows) {
  Tensor3 out(rows.size(), all.length(), all.channels());
  for (std::size_t b = 0; b < rows.size(); ++b) {
    auto src = all.item(rows[b]);
    std::copy(src.begin(), src.end(), out.item(b).begin());
  }
  return out;
}

double mean_error(const Autoencoder& model, const Tensor3& x) {
  constexpr std::size_t kChunk = 64;
  double sum = 0.0;
  std::vector<std::size_t> rows;
  for (std::size_t at = 0; at < x.batch(); at += kChunk) {
    rows.resize(std::min(kChunk, x.batch() - at));
    std::iota(rows.begin(), rows.end(), at);
    Tensor3 chunk = gather(x, rows);
    for (real e : neural::mae_per_item(chunk, model.reconstruct(chunk))) sum += static_cast<double>(e);
  }
  return sum / static_cast<double>(x.batch());
}

}  // namespace

TrainResult train(Autoencoder model, std::span<const FeatureWindow> windows, const TrainConfig& config) {
  config.check();
  for (const auto& w : windows) {
    if (w.tag != WindowTag::helicopter) {
      throw InvalidArgument("train: window from track '" + w.source_track_id +
                            "' is not tagged helicopter");
    }
  }
  if (windows.size() < kMinTrainingWindows) {
    throw TooFewValues(fmt::format("train: need at least {} windows, got {}", kMinTrainingWindows,
                                   windows.size()));
  }

  TrainResult result;
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  auto n_val = static_cast<std::size_t>(
      std::llround(config.validation_fraction * static_cast<double>(windows.size())));
  n_val = std::clamp<std::size_t>(n_val, 1, windows.size() - 2);
  result.validation_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  result.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());

  std::vector<FeatureWindow> train_set, val_set;
  for (auto i : result.train_indices) train_set.push_back(windows[i]);
  for (auto i : result.validation_indices) val_set.push_back(windows[i]);
  model.set_norm(fit_norm_stats(train_set));
  const Tensor3 x_train = normalized_tensor(model, train_set);
  const Tensor3 x_val = normalized_tensor(model, val_set);

  neural::AdamState adam{config.adam, 0, {}, {}};
  std::vector<std::size_t> rows(x_train.batch());
  std::iota(rows.begin(), rows.end(), 0);
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<real> best_params = model.snapshot();
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle(rows, rng);
    for (std::size_t at = 0; at < rows.size(); at += config.batch_size) {
      std::size_t n = std::min(config.batch_size, rows.size() - at);
      Tensor3 x = gather(x_train, std::span(rows).subspan(at, n));
      ForwardCache cache;
      Tensor3 y = model.forward(x, cache);
      real loss = neural::mae(x, y);
      if (!std::isfinite(static_cast<double>(loss))) {
        throw TrainingDiverged(fmt::format("train: non-finite loss at epoch {}, batch starting at {}",
                                           epoch, at));
      }
      auto grads = model.backward(cache, neural::mae_gradient(x, y));
      auto slots = model.param_slots(grads);
      neural::adam_step(slots, adam);
    }

    EpochLoss e{epoch, mean_error(model, x_train), mean_error(model, x_val)};
    if (!std::isfinite(e.train_mae) || !std::isfinite(e.val_mae)) {
      throw TrainingDiverged(fmt::format("train: non-finite evaluation loss after epoch {}", epoch));
    }
    result.history.push_back(e);
    if (e.val_mae < best_val) {
      best_val = e.val_mae;
      best_params = model.snapshot();
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience && config.patience > 0) {
      result.stopped_early = true;
      break;
    }
  }
  model.restore(best_params);
  result.model = std::move(model);
  return result;
}

double mean_reconstruction_error(const Autoencoder& model, std::span<const FeatureWindow> raw_windows) {
  if (raw_windows.empty()) throw TooFewValues("no windows to evaluate");
  auto errors = reconstruction_errors(model, raw_windows);
  return std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
}

}  // namespace rotortrack
