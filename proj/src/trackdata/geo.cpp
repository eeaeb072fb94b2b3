#include "rotortrack/trackdata/geo.hpp"

#include <cmath>

namespace rotortrack::geo {

LocalOffset project(double lat, double lon, const Runway& runway) {
  const double lat0 = radians(runway.threshold_lat);
  double dlon = lon - runway.threshold_lon;
  if (dlon > 180) dlon -= 360;
  if (dlon < -180) dlon += 360;
  return {kEarthRadiusKm * radians(dlon) * std::cos(lat0),
          kEarthRadiusKm * radians(lat - runway.threshold_lat)};
}

double distance_to_threshold_km(const TrackPoint& p, const Runway& runway) {
  auto off = project(p.lat, p.lon, runway);
  return std::hypot(off.east_km, off.north_km);
}

double course_difference(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180 ? 360 - d : d;
}

CenterlineOffset centerline_offset(const TrackPoint& p, const Runway& runway) {
  auto off = project(p.lat, p.lon, runway);
  const double c = radians(runway.centerline_course);
  return {off.east_km * std::sin(c) + off.north_km * std::cos(c),
          off.east_km * std::cos(c) - off.north_km * std::sin(c)};
}

}  // namespace rotortrack::geo
