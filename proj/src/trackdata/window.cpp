#include "rotortrack/trackdata/window.hpp"

#include <algorithm>
#include <cmath>

#include "rotortrack/error.hpp"
#include "rotortrack/trackdata/geo.hpp"

namespace rotortrack {

std::string_view to_string(WindowRejection r) {
  switch (r) {
    case WindowRejection::fewer_than_100_points: return "fewer_than_100_points";
    case WindowRejection::no_approach: return "no_approach";
  }
  return "unknown";
}

std::size_t closest_approach_index(const Track& track, const Runway& runway) {
  if (track.points.empty()) throw InvalidArgument("closest_approach_index: empty track");
  std::size_t best = 0;
  double best_d = geo::distance_to_threshold_km(track.points[0], runway);
  for (std::size_t i = 1; i < track.points.size(); ++i) {
    double d = geo::distance_to_threshold_km(track.points[i], runway);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

WindowOutcome window_arrival(const Track& track, const Runway& runway) {
  WindowOutcome out;
  if (track.points.size() < kWindowLength) {
    out.rejection = WindowRejection::fewer_than_100_points;
    out.detail = "track has " + std::to_string(track.points.size()) + " points";
    return out;
  }
  const std::size_t ca = closest_approach_index(track, runway);
  const double dist = geo::distance_to_threshold_km(track.points[ca], runway);
  if (dist > kMaxApproachNm * geo::kKmPerNm) {
    out.rejection = WindowRejection::no_approach;
    out.detail = "closest approach " + std::to_string(dist / geo::kKmPerNm) + " NM";
    return out;
  }
  if (ca + 1 < kWindowLength) {
    out.rejection = WindowRejection::fewer_than_100_points;
    out.detail = std::to_string(ca + 1) + " points at or before closest approach";
    return out;
  }
  RawWindow w;
  w.track_id = track.track_id;
  w.closest_index = ca;
  w.closest_distance_km = dist;
  w.points.assign(track.points.begin() + static_cast<std::ptrdiff_t>(ca + 1 - kWindowLength),
                  track.points.begin() + static_cast<std::ptrdiff_t>(ca + 1));
  out.window = std::move(w);
  return out;
}

FeatureRow featurize_point(const TrackPoint& p, const Runway& runway) {
  const auto off = geo::project(p.lat, p.lon, runway);
  const double rel = geo::radians(p.course - runway.centerline_course);
  return {off.east_km, off.north_km, (p.alt - runway.threshold_elev) / 1000.0, p.gs / 100.0,
          std::sin(rel), std::cos(rel)};
}

void check_window(const FeatureWindow& w) {
  if (w.rows.size() != kWindowLength) {
    throw InvalidArgument("feature window " + w.source_track_id + " has " +
                          std::to_string(w.rows.size()) + " rows");
  }
  for (const auto& row : w.rows)
    for (double v : row)
      if (!std::isfinite(v)) throw InvalidArgument("feature window " + w.source_track_id + " is not finite");
}

FeatureWindow featurize(const RawWindow& window, const Runway& runway) {
  FeatureWindow out;
  out.source_track_id = window.track_id;
  out.rows.reserve(window.points.size());
  for (const auto& p : window.points) out.rows.push_back(featurize_point(p, runway));
  check_window(out);
  return out;
}

NormStats fit_norm_stats(std::span<const FeatureWindow> windows) {
  if (windows.size() < 2) {
    throw ZeroVarianceFeature("normalization needs at least two windows; std is undefined");
  }
  NormStats stats;
  std::array<double, kFeatureCount> sum{};
  std::size_t n = 0;
  for (const auto& w : windows) {
    check_window(w);
    for (const auto& row : w.rows) {
      for (std::size_t f = 0; f < kFeatureCount; ++f) sum[f] += row[f];
      ++n;
    }
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) stats.mean[f] = sum[f] / static_cast<double>(n);
  std::array<double, kFeatureCount> sq{};
  for (const auto& w : windows)
    for (const auto& row : w.rows)
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double d = row[f] - stats.mean[f];
        sq[f] += d * d;
      }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    stats.stddev[f] = std::sqrt(sq[f] / static_cast<double>(n));
    // Relative floor so a column that is constant up to rounding still counts as constant.
    if (!(stats.stddev[f] > 1e-12 * std::max(1.0, std::abs(stats.mean[f])))) {
      throw ZeroVarianceFeature("feature '" + std::string(kFeatureNames[f]) + "' has zero variance");
    }
  }
  return stats;
}

FeatureWindow normalize(const FeatureWindow& window, const NormStats& stats) {
  check_window(window);
  FeatureWindow out = window;
  for (auto& row : out.rows)
    for (std::size_t f = 0; f < kFeatureCount; ++f) row[f] = (row[f] - stats.mean[f]) / stats.stddev[f];
  check_window(out);
  return out;
}

}  // namespace rotortrack
