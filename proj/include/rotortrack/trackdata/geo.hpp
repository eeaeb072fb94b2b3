#pragma once

#include "rotortrack/trackdata/types.hpp"

namespace rotortrack::geo {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEarthRadiusKm = 6371.0088;
inline constexpr double kKmPerNm = 1.852;
inline constexpr double kFeetPerKm = 1000.0 / 0.3048;

inline double radians(double deg) { return deg * kPi / 180.0; }

/// East/north offset in km on the tangent plane at the runway threshold
/// (equirectangular about the threshold latitude).
struct LocalOffset {
  double east_km = 0;
  double north_km = 0;
};

LocalOffset project(double lat, double lon, const Runway& runway);

double distance_to_threshold_km(const TrackPoint& p, const Runway& runway);

/// |a - b| folded onto [0, 180].
double course_difference(double a, double b);

/// Signed offset from the extended centerline in km, positive right of the
/// landing direction, and distance along it (positive past the threshold).
struct CenterlineOffset {
  double along_km = 0;
  double cross_km = 0;
};

CenterlineOffset centerline_offset(const TrackPoint& p, const Runway& runway);

}  // namespace rotortrack::geo
