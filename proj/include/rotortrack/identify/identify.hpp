#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rotortrack/autoencoder/model.hpp"
#include "rotortrack/runwayscore/score.hpp"
#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

inline constexpr std::size_t kMinCalibrationValues = 10;
inline constexpr std::string_view kMaeReason = "mae_at_or_above_threshold";
inline constexpr std::string_view kRunwayReason = "runway_score_at_or_above";
inline constexpr std::string_view kUnclassifiablePrefix = "unclassifiable:";

struct Thresholds {
  double delta = 0;        // MAE cutoff
  double percentile = 80;  // percentile delta was taken at
  double runway_delta = 0.5;

  /// delta > 0, percentile in (0, 100], runway_delta in [0, 1].
  void check() const;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

std::string thresholds_to_json(const Thresholds& t);
Thresholds thresholds_from_json(std::string_view text);

/// p-th percentile with linear interpolation between order statistics:
/// rank p/100 * (n-1) into the sorted values. p in [0, 100].
double percentile(std::span<const double> values, double p);

/// MAE cutoff at `pct` of the training errors. Needs kMinCalibrationValues
/// finite, non-negative values (TooFewValues / InvalidArgument otherwise).
double calibrate(std::span<const double> training_maes, double pct);

struct Decision {
  bool is_helicopter = false;
  std::vector<std::string> reasons;  // failed gates, empty when is_helicopter
};

/// Helicopter iff mae < delta and runway score < runway_delta, both strict.
Decision decide(double mae, double runway_score, const Thresholds& t);

struct ClassificationResult {
  std::string track_id;
  std::optional<double> mae;           // absent when the track could not be windowed
  std::optional<double> runway_score;  // absent for a track with no points
  bool pred_is_helicopter = false;
  std::vector<std::string> reasons;

  friend bool operator==(const ClassificationResult&, const ClassificationResult&) = default;
};

/// Window, featurize and reconstruct the track, score the runway at the
/// closest-approach point, then apply decide(). A windowing rejection yields
/// pred false with reason "unclassifiable:<rejection>"; the runway score is
/// still reported.
ClassificationResult classify(const Autoencoder& model, const Thresholds& t, const Track& track,
                              const Runway& runway, const RunwayScoreParams& params = {});

/// Runway named by the track when the table has it, otherwise the runway
/// whose threshold the track passes closest to. Null for an empty table or
/// a track without points.
const Runway* select_runway(const Track& track, const std::map<std::string, Runway>& runways);

/// classify() for every track, parallel per track, results in input order.
std::vector<ClassificationResult> classify_all(const Autoencoder& model, const Thresholds& t,
                                               std::span<const Track> tracks,
                                               const std::map<std::string, Runway>& runways,
                                               const RunwayScoreParams& params = {});

inline constexpr std::string_view kResultsHeader = "track_id,mae,runway_score,pred_is_helicopter,reasons";

/// The five results columns for one row, and back. Reasons are joined with
/// ';'; absent numbers are empty fields.
std::vector<std::string> result_fields(const ClassificationResult& r);
ClassificationResult result_from_fields(std::span<const std::string> fields, std::size_t line);

std::string results_to_csv(std::span<const ClassificationResult> results);
std::vector<ClassificationResult> results_from_csv(std::string_view text, const std::string& source = "results");
void save_results(const std::filesystem::path& path, std::span<const ClassificationResult> results);
std::vector<ClassificationResult> load_results(const std::filesystem::path& path);

struct Histogram {
  double lo = 0;
  double hi = 0;
  std::vector<std::size_t> counts;

  double bin_start(std::size_t i) const;
  double bin_end(std::size_t i) const;
};

/// Uniform bins over [min, max]; the last bin includes max. A constant
/// sample puts everything in the first bin. Throws TooFewValues when empty.
Histogram histogram(std::span<const double> values, std::size_t bins);
std::string histogram_csv(const Histogram& h);
/// Bar chart for a terminal, one line per bin.
std::string histogram_text(const Histogram& h, std::size_t width = 50);

}  // namespace rotortrack
