#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rotortrack/identify/identify.hpp"
#include "rotortrack/trackdata/labels.hpp"
#include "rotortrack/trackdata/registration.hpp"

namespace rotortrack {

/// Declared type is a known helicopter designator or a pseudo helicopter
/// label. Both sets hold normalized keys.
bool rule_based_baseline(const Track& track, const std::set<std::string>& helicopter_types,
                         const std::set<std::string>& pseudo_types);

enum class MatchKind { by_tail, by_mode_s, unmatched };

std::string_view to_string(MatchKind m);
MatchKind parse_match_kind(std::string_view text);

struct ValidationRecord {
  ClassificationResult prediction;
  bool baseline_is_helicopter = false;
  std::optional<std::string> declared_type;
  MatchKind matched = MatchKind::unmatched;
  // Set iff matched != unmatched.
  std::optional<std::string> n_number;
  std::optional<AircraftClass> aircraft_class;
  std::optional<bool> is_helicopter_ac_reg;
  std::optional<std::string> model;
  std::optional<std::string> manufacturer;
  std::optional<std::string> type_designator;
  // Tail and Mode-S matched registrations of different classes; the tail match is kept.
  bool conflict = false;

  friend bool operator==(const ValidationRecord&, const ValidationRecord&) = default;
};

/// Annotate each result with its track's registration, tail number first and
/// Mode-S second. Results whose track is missing from `tracks` stay unmatched
/// with no declared type and a false baseline.
std::vector<ValidationRecord> join_registration(std::span<const ClassificationResult> results,
                                                std::span<const Track> tracks, const RegistrationTable& table,
                                                const std::set<std::string>& helicopter_types,
                                                const std::set<std::string>& pseudo_types);

inline constexpr std::string_view kValidationHeader =
    "track_id,mae,runway_score,pred_is_helicopter,reasons,baseline_is_helicopter,declared_type,matched,"
    "n_number,aircraft_class,is_helicopter_ac_reg,model,manufacturer,type_designator,conflict";

std::string validation_to_csv(std::span<const ValidationRecord> records);
std::vector<ValidationRecord> validation_from_csv(std::string_view text, const std::string& source = "validation");

struct ConfusionMetrics {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  std::size_t true_negative = 0;
  std::size_t without_truth = 0;  // excluded: no registration match or no label
  std::optional<double> precision;  // absent when nothing was predicted positive
  std::optional<double> recall;     // absent when no positives exist

  friend bool operator==(const ConfusionMetrics&, const ConfusionMetrics&) = default;
};

/// Truth from the registration join (rotorcraft = helicopter).
ConfusionMetrics confusion_metrics(std::span<const ValidationRecord> records);
/// Truth from a labels sidecar (class == "helicopter").
ConfusionMetrics confusion_metrics(std::span<const ValidationRecord> records, const LabelMap& labels);
/// Baseline decisions scored against the sidecar labels.
ConfusionMetrics baseline_metrics(std::span<const ValidationRecord> records, const LabelMap& labels);

/// metric,value rows; undefined ratios are written as N/A.
std::string metrics_csv(const ConfusionMetrics& m, std::string_view prefix = "");

struct VennCounts {
  std::size_t both = 0;
  std::size_t autoencoder_only = 0;
  std::size_t baseline_only = 0;

  friend bool operator==(const VennCounts&, const VennCounts&) = default;
};

VennCounts venn_compare(const std::set<std::string>& autoencoder, const std::set<std::string>& baseline);
/// Sets of track ids flagged by the model and by the baseline.
VennCounts venn_compare(std::span<const ValidationRecord> records);

std::string venn_csv(const VennCounts& v);
std::string venn_text(const VennCounts& v);

struct PseudoTypeRow {
  std::string track_id;
  std::string declared_type;  // empty when the track declared none
  std::string model;
  std::string manufacturer;
  std::string type_designator;

  friend bool operator==(const PseudoTypeRow&, const PseudoTypeRow&) = default;
};

/// Matched records whose declared type is a pseudo label or missing, and
/// whose registration names a model.
std::vector<PseudoTypeRow> resolve_pseudo_types(std::span<const ValidationRecord> records,
                                                const std::set<std::string>& pseudo_types);

inline constexpr std::string_view kPseudoTypesHeader =
    "track_id,declared_type,model,manufacturer,type_designator";
std::string pseudo_types_csv(std::span<const PseudoTypeRow> rows);

}  // namespace rotortrack
