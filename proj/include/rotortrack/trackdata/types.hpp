#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotortrack {

/// One surveillance report.
struct TrackPoint {
  double t = 0;       // seconds since epoch
  double lat = 0;     // degrees
  double lon = 0;     // degrees
  double alt = 0;     // feet MSL
  double course = 0;  // degrees true, [0, 360)
  double gs = 0;      // knots

  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

struct Track {
  std::string track_id;
  std::vector<TrackPoint> points;  // strictly increasing t
  std::optional<std::string> callsign;
  std::optional<std::string> mode_s;
  std::optional<std::string> tail_number;
  std::optional<std::string> declared_type;
  std::optional<std::string> arrival_airport;
  std::optional<std::string> runway_id;
  std::optional<bool> scratchpad_runway;

  friend bool operator==(const Track&, const Track&) = default;
};

struct Runway {
  std::string runway_id;
  double threshold_lat = 0;
  double threshold_lon = 0;
  double threshold_elev = 0;     // feet
  double centerline_course = 0;  // degrees true, [0, 360)
  double length = 0;             // feet

  friend bool operator==(const Runway&, const Runway&) = default;
};

enum class AircraftClass { rotorcraft, fixed_wing, other };

std::string_view to_string(AircraftClass c);
/// Accepts ROTORCRAFT (and the ROTOCRAFT spelling seen in registry extracts),
/// FIXED_WING / FIXED WING and OTHER, case-insensitively.
std::optional<AircraftClass> parse_aircraft_class(std::string_view text);

struct RegistrationRecord {
  std::string n_number;
  std::optional<std::string> mode_s_code;
  std::string model;
  std::string manufacturer;
  AircraftClass aircraft_class = AircraftClass::other;
  std::optional<std::string> type_designator;

  friend bool operator==(const RegistrationRecord&, const RegistrationRecord&) = default;
};

/// Reason the point violates its invariants, or nullopt.
std::optional<std::string> check_point(const TrackPoint& p);
/// Checks every point plus strict time ordering and a non-empty id.
std::optional<std::string> check_track(const Track& t);
std::optional<std::string> check_runway(const Runway& r);

/// Upper-cased, surrounding whitespace removed; used for every join key.
std::string normalize_key(std::string_view text);

}  // namespace rotortrack
