#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rotortrack/trackdata/geo.hpp"
#include "rotortrack/trackdata/types.hpp"
#include "rotortrack/trackdata/window.hpp"

namespace builders {

inline rotortrack::Runway test_runway() {
  return {"07R", 33.6886, -112.0825, 1478.0, 70.0, 8200.0};
}

// Inverse of the equirectangular projection about the runway threshold.
inline std::pair<double, double> offset_to_latlon(double east_km, double north_km,
                                                  const rotortrack::Runway& rwy) {
  using namespace rotortrack::geo;
  double lat = rwy.threshold_lat + north_km / kEarthRadiusKm * 180.0 / kPi;
  double lon = rwy.threshold_lon + east_km / (kEarthRadiusKm * std::cos(radians(rwy.threshold_lat))) * 180.0 / kPi;
  return {lat, lon};
}

// Straight pass heading due east, 0.1 km per point, closest to the threshold at `closest`.
inline rotortrack::Track line_track(std::size_t n, std::size_t closest, const std::string& id = "T1",
                                    double lateral_km = 0.05) {
  auto rwy = test_runway();
  rotortrack::Track t;
  t.track_id = id;
  for (std::size_t i = 0; i < n; ++i) {
    double east = (static_cast<double>(i) - static_cast<double>(closest)) * 0.1;
    auto [lat, lon] = offset_to_latlon(east, lateral_km, rwy);
    t.points.push_back({1000.0 + 4.0 * static_cast<double>(i), lat, lon, 2000.0, 90.0, 90.0});
  }
  return t;
}

// A smooth curved approach described directly in feature space: a turning
// path that descends and slows toward the end. Parameters drawn from `rng`.
inline rotortrack::FeatureWindow curved_window(std::mt19937_64& rng, const std::string& id = "W") {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double radius = 1.0 + 2.0 * u(rng);
  double turn = 0.5 + 1.5 * u(rng);
  double phase = 6.283185307179586 * u(rng);
  double alt0 = 0.8 + 0.6 * u(rng);
  double gs0 = 0.8 + 0.4 * u(rng);
  rotortrack::FeatureWindow w;
  w.source_track_id = id;
  w.tag = rotortrack::WindowTag::helicopter;
  for (std::size_t i = 0; i < rotortrack::kWindowLength; ++i) {
    double s = static_cast<double>(i) / static_cast<double>(rotortrack::kWindowLength - 1);
    double a = phase + turn * s;
    double heading = a + 1.5707963267948966;
    w.rows.push_back({radius * std::cos(a) * (1.5 - s), radius * std::sin(a) * (1.5 - s),
                      alt0 * (1.0 - 0.8 * s), gs0 * (1.0 - 0.5 * s), std::sin(heading), std::cos(heading)});
  }
  return w;
}

inline std::vector<rotortrack::FeatureWindow> curved_windows(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<rotortrack::FeatureWindow> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(curved_window(rng, "W" + std::to_string(i)));
  return out;
}

}  // namespace builders
