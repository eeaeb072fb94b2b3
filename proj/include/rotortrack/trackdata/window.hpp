#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

inline constexpr std::size_t kWindowLength = 100;
inline constexpr double kMaxApproachNm = 10.0;

enum class WindowRejection { fewer_than_100_points, no_approach };

std::string_view to_string(WindowRejection r);

/// The last kWindowLength points at or before closest approach, oldest first.
struct RawWindow {
  std::string track_id;
  std::vector<TrackPoint> points;
  std::size_t closest_index = 0;  // index of closest approach in the source track
  double closest_distance_km = 0;
};

struct WindowOutcome {
  std::optional<RawWindow> window;
  WindowRejection rejection = WindowRejection::fewer_than_100_points;
  std::string detail;

  bool ok() const noexcept { return window.has_value(); }
};

/// Index of the point nearest the runway threshold; the first one on ties.
/// The track must have at least one point.
std::size_t closest_approach_index(const Track& track, const Runway& runway);

WindowOutcome window_arrival(const Track& track, const Runway& runway);

// ---- features -----------------------------------------------------------

inline constexpr std::size_t kFeatureCount = 6;
using FeatureRow = std::array<double, kFeatureCount>;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "east_km", "north_km", "alt_above_threshold_kft", "gs_per_100kt", "sin_course_offset",
    "cos_course_offset"};

/// East/north offset from the threshold (km), height above threshold
/// elevation (kft), groundspeed (kt/100), sin and cos of course minus
/// centerline course.
FeatureRow featurize_point(const TrackPoint& p, const Runway& runway);

enum class WindowTag { unlabeled, helicopter };

/// kWindowLength x kFeatureCount matrix, raw or normalized.
struct FeatureWindow {
  std::string source_track_id;
  std::vector<FeatureRow> rows;
  WindowTag tag = WindowTag::unlabeled;
};

/// Throws InvalidArgument unless the window has exactly kWindowLength finite rows.
void check_window(const FeatureWindow& w);

FeatureWindow featurize(const RawWindow& window, const Runway& runway);

// ---- normalization ------------------------------------------------------

struct NormStats {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> stddev{};

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

/// Per-feature mean and population standard deviation pooled over every row
/// of every window. Throws ZeroVarianceFeature for a constant feature or for
/// fewer than two windows.
NormStats fit_norm_stats(std::span<const FeatureWindow> windows);

/// (x - mean) / std per feature; tag and id are carried over.
FeatureWindow normalize(const FeatureWindow& window, const NormStats& stats);

}  // namespace rotortrack
