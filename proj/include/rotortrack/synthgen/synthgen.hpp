#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "rotortrack/trackdata/labels.hpp"
#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

struct Band {
  double min = 0;
  double max = 0;

  bool valid() const { return min <= max; }
};

/// Kinematics of one aircraft class. Speeds in knots, heights above the
/// threshold in feet, descent in ft/min, turn rate in deg/s.
struct ClassProfile {
  Band speed_kt;        // reported groundspeed is clamped to this band
  Band cruise_kt;       // speed far from the destination
  Band final_kt;        // speed on arrival
  Band cruise_agl_ft;
  Band descent_fpm;
  Band turn_rate_dps;   // per-track turn-rate limit is drawn from this band
  Band final_nm;        // fixed-wing: length of the straight final; unused for helicopters
  Band start_km;        // fixed-wing: start distance from the final intercept
  double alignment_noise_ft = 0;  // std of lateral wander on final (fixed-wing)
  double wander_dps = 0;          // std of random turn-rate wander
};

ClassProfile default_helicopter_profile();
ClassProfile default_general_aviation_profile();
ClassProfile default_commercial_profile();

/// East/north offset from the runway threshold (km).
struct Waypoint {
  double east_km = 0;
  double north_km = 0;
};

/// Inbound helicopter route: entry point, turn points, and the helipad last.
using HelicopterRoute = std::vector<Waypoint>;

/// Routes into four helipads, two per pad, each approaching from the side
/// away from the runway so the pad is the closest point to the threshold.
std::vector<HelicopterRoute> default_helicopter_routes();

struct ScenarioSpec {
  std::uint64_t seed = 7;
  std::size_t helicopters = 100;
  std::size_t general_aviation = 100;
  std::size_t commercial = 100;
  Runway runway{"07R", 33.6886, -112.0825, 1478.0, 70.0, 8200.0};
  std::string airport = "SYN";
  std::vector<HelicopterRoute> helicopter_routes = default_helicopter_routes();
  double route_jitter_km = 0.4;  // std of the turn-point offsets; entry points get 2.5x, pads 0.05 km
  ClassProfile helicopter = default_helicopter_profile();
  ClassProfile general_aviation_profile = default_general_aviation_profile();
  ClassProfile commercial_profile = default_commercial_profile();
  double sample_interval_s = 4.0;
  double position_noise_m = 15.0;
  double course_noise_deg = 1.5;
  double speed_noise_kt = 2.0;
  std::size_t min_points = 120;

  void check() const;
};

enum class AircraftCategory { helicopter, general_aviation, commercial };

std::string_view to_string(AircraftCategory c);

struct Scenario {
  Runway runway;
  std::vector<Track> tracks;
  std::vector<AircraftCategory> categories;  // parallel to tracks
  std::vector<RegistrationRecord> registration;
  std::set<std::string> helicopter_types;
  std::set<std::string> pseudo_types;

  LabelMap labels() const;
};

/// Deterministic in spec.seed. Each track draws from its own stream seeded by
/// (seed, index, attempt), so the output does not depend on thread count.
/// Classes are interleaved by a seeded shuffle; ids are SYN00001, SYN00002, ...
Scenario generate(const ScenarioSpec& spec);

inline constexpr std::string_view kTracksFile = "tracks.jsonl";
inline constexpr std::string_view kLabelsFile = "labels.csv";
inline constexpr std::string_view kRunwaysFile = "runways.csv";
inline constexpr std::string_view kRegistrationFile = "registration.csv";
inline constexpr std::string_view kHelicopterTypesFile = "heli_types.txt";
inline constexpr std::string_view kPseudoTypesFile = "pseudo_types.txt";

void write_scenario(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace rotortrack
