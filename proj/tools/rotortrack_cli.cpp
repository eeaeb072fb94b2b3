// rotortrack: synthetic data, training, calibration, classification and
// validation stages for arrival-track helicopter identification.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/pipeline/config.hpp"
#include "rotortrack/pipeline/stages.hpp"

using namespace rotortrack;

namespace {

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string out_dir;
};

PipelineConfig resolve(const Globals& g) {
  PipelineConfig c = g.config_path.empty() ? PipelineConfig{} : load_config(g.config_path);
  if (g.seed) c.apply_seed(*g.seed);
  if (g.strict) c.on_bad = OnBadRecord::abort;
  if (!g.out_dir.empty()) c.paths.out_dir = g.out_dir;
  return c;
}

std::string ratio(const std::optional<double>& r) { return r ? fmt::format("{:.4f}", *r) : "N/A"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helicopter identification from arrival tracks with a convolutional autoencoder"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "pipeline config (JSON); every key is optional");
  app.add_option("--seed", g.seed, "seed for generation, initialization and training");
  app.add_flag("--strict", g.strict, "abort on the first malformed input line");
  app.add_option("--out-dir", g.out_dir, "directory for inputs and outputs with relative paths");

  auto* synth = app.add_subcommand("synth", "generate labeled synthetic tracks");
  std::optional<std::size_t> heli, ga, com;
  synth->add_option("--heli", heli, "helicopter tracks");
  synth->add_option("--ga", ga, "general aviation tracks");
  synth->add_option("--com", com, "commercial tracks");

  auto* train = app.add_subcommand("train", "train the autoencoder on labeled helicopter windows");
  std::optional<std::size_t> epochs, train_count;
  train->add_option("--epochs", epochs, "maximum epochs");
  train->add_option("--train-count", train_count, "helicopter tracks to train on");

  auto* calibrate = app.add_subcommand("calibrate", "pick the MAE threshold from the training errors");
  std::optional<double> percentile;
  calibrate->add_option("--percentile", percentile, "percentile of training MAE, in (0, 100]");

  auto* classify = app.add_subcommand("classify", "classify tracks not used for training");
  std::optional<double> runway_delta;
  calibrate->add_option("--runway-delta", runway_delta, "runway score threshold stored with delta");

  auto* validate = app.add_subcommand("validate", "join registration, compute metrics and baseline overlap");
  auto* report = app.add_subcommand("report", "write a text summary of the latest run");
  auto* defaults = app.add_subcommand("config", "print the effective config as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig c = resolve(g);
    if (heli) c.scenario.helicopters = *heli;
    if (ga) c.scenario.general_aviation = *ga;
    if (com) c.scenario.commercial = *com;
    if (epochs) c.train.epochs = *epochs;
    if (train_count) c.train_count = *train_count;
    if (percentile) c.percentile = *percentile;
    if (runway_delta) c.runway_delta = *runway_delta;
    c.check();

    if (*synth) {
      auto s = run_synth(c);
      fmt::print("wrote {} tracks and {} registration rows to {}\n", s.tracks, s.registration_rows,
                 c.paths.out_dir.string());
    } else if (*train) {
      auto s = run_train(c);
      fmt::print("trained on {} windows: {} epochs, best epoch {}, train MAE {:.6g} -> {:.6g}\n", s.windows,
                 s.epochs_run, s.best_epoch, s.first_train_mae, s.final_train_mae);
    } else if (*calibrate) {
      auto s = run_calibrate(c);
      fmt::print("delta = {:.8g} ({} percentile of {} training errors), runway delta {}\n", s.thresholds.delta,
                 s.thresholds.percentile, s.samples, s.thresholds.runway_delta);
    } else if (*classify) {
      auto s = run_classify(c);
      fmt::print("classified {} tracks: {} helicopters, {} unclassifiable ({} training tracks skipped)\n",
                 s.classified, s.predicted_helicopters, s.unclassifiable, s.skipped_training);
    } else if (*validate) {
      auto s = run_validate(c);
      fmt::print("registration: precision {} recall {} ({} without a match)\n",
                 ratio(s.registration_metrics.precision), ratio(s.registration_metrics.recall),
                 s.registration_metrics.without_truth);
      if (s.label_metrics) {
        fmt::print("labels:       precision {} recall {}\n", ratio(s.label_metrics->precision),
                   ratio(s.label_metrics->recall));
      }
      fmt::print("venn: both {}, autoencoder only {}, baseline only {}\n", s.venn.both, s.venn.autoencoder_only,
                 s.venn.baseline_only);
    } else if (*report) {
      fmt::print("{}", run_report(c));
    } else if (*defaults) {
      fmt::print("{}", config_to_json(c));
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }
  return 0;
}
