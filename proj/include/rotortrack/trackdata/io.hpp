#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

/// What to do with a record that fails to parse or violates invariants.
enum class OnBadRecord { skip, abort };

struct Reject {
  std::size_t line = 0;
  std::string reason;
};

struct TrackLoad {
  std::vector<Track> tracks;
  std::vector<Reject> rejects;
};

/// Tracks file: one JSON object per line. Lines are parsed in parallel; the
/// result keeps input order. With OnBadRecord::abort the first bad line throws
/// ParseError carrying its line number.
TrackLoad load_tracks(const std::filesystem::path& path, OnBadRecord on_bad = OnBadRecord::skip);
TrackLoad parse_tracks(std::string_view text, OnBadRecord on_bad = OnBadRecord::skip);

std::string track_to_json(const Track& track);
void save_tracks(const std::filesystem::path& path, std::span<const Track> tracks);

inline constexpr std::string_view kRunwaysHeader =
    "runway_id,threshold_lat,threshold_lon,threshold_elev,centerline_course,length";

/// Runways keyed by runway_id. Any bad row throws.
std::map<std::string, Runway> load_runways(const std::filesystem::path& path);
void save_runways(const std::filesystem::path& path, std::span<const Runway> runways);

}  // namespace rotortrack
