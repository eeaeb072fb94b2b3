#include "rotortrack/trackdata/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace rotortrack {

std::string_view to_string(AircraftClass c) {
  switch (c) {
    case AircraftClass::rotorcraft: return "ROTORCRAFT";
    case AircraftClass::fixed_wing: return "FIXED_WING";
    case AircraftClass::other: return "OTHER";
  }
  return "OTHER";
}

std::optional<AircraftClass> parse_aircraft_class(std::string_view text) {
  std::string key = normalize_key(text);
  std::replace(key.begin(), key.end(), ' ', '_');
  if (key == "ROTORCRAFT" || key == "ROTOCRAFT") return AircraftClass::rotorcraft;
  if (key == "FIXED_WING") return AircraftClass::fixed_wing;
  if (key == "OTHER") return AircraftClass::other;
  return std::nullopt;
}

std::optional<std::string> check_point(const TrackPoint& p) {
  for (double v : {p.t, p.lat, p.lon, p.alt, p.course, p.gs}) {
    if (!std::isfinite(v)) return "non-finite value";
  }
  if (p.lat < -90 || p.lat > 90) return "lat outside [-90,90]";
  if (p.lon < -180 || p.lon > 180) return "lon outside [-180,180]";
  if (p.gs < 0) return "negative gs";
  if (p.course < 0 || p.course >= 360) return "course outside [0,360)";
  return std::nullopt;
}

std::optional<std::string> check_track(const Track& t) {
  if (t.track_id.empty()) return "empty track_id";
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    if (auto why = check_point(t.points[i])) return "point " + std::to_string(i) + ": " + *why;
    if (i > 0 && !(t.points[i].t > t.points[i - 1].t)) {
      return "point " + std::to_string(i) + ": t not strictly increasing";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_runway(const Runway& r) {
  if (r.runway_id.empty()) return "empty runway_id";
  for (double v : {r.threshold_lat, r.threshold_lon, r.threshold_elev, r.centerline_course, r.length}) {
    if (!std::isfinite(v)) return "non-finite value";
  }
  if (r.threshold_lat < -90 || r.threshold_lat > 90) return "threshold_lat outside [-90,90]";
  if (r.threshold_lon < -180 || r.threshold_lon > 180) return "threshold_lon outside [-180,180]";
  if (!(r.length > 0)) return "length must be > 0";
  if (r.centerline_course < 0 || r.centerline_course >= 360) return "centerline_course outside [0,360)";
  return std::nullopt;
}

std::string normalize_key(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(" \t\r\n");
  std::string out(text.substr(first, last - first + 1));
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace rotortrack
