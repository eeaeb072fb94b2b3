#include "rotortrack/runwayscore/score.hpp"

#include <cmath>

#include "rotortrack/error.hpp"
#include "rotortrack/trackdata/geo.hpp"

namespace rotortrack {

void RunwayScoreParams::check() const {
  for (double s : {distance_scale_nm, course_scale_deg, lateral_scale_ft, length_scale_ft}) {
    if (!(s > 0) || !std::isfinite(s)) throw InvalidArgument("runway score: scales must be positive");
  }
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw InvalidArgument("runway score: weights must be non-negative");
    total += w;
  }
  if (!(total > 0)) throw InvalidArgument("runway score: weights sum to zero");
}

std::array<double, 5> runway_score_components(const RunwayScoreInputs& in, const RunwayScoreParams& p) {
  auto bad = [](double v) { return !std::isfinite(v) || v < 0; };
  if (bad(in.distance_nm) || bad(in.runway_length_ft) || bad(in.lateral_deviation_ft) ||
      bad(in.course_difference_deg) || in.course_difference_deg > 180.0) {
    throw InvalidArgument("runway score: inputs out of range");
  }
  return {std::exp(-in.distance_nm / p.distance_scale_nm),
          std::max(0.0, 1.0 - in.course_difference_deg / p.course_scale_deg),
          std::max(0.0, 1.0 - in.lateral_deviation_ft / p.lateral_scale_ft),
          std::min(1.0, in.runway_length_ft / p.length_scale_ft),
          in.scratchpad_reported ? 1.0 : 0.0};
}

double runway_score(const RunwayScoreInputs& in, const RunwayScoreParams& p) {
  p.check();
  auto f = runway_score_components(in, p);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += p.weights[i] * f[i];
    den += p.weights[i];
  }
  return std::clamp(num / den, 0.0, 1.0);
}

RunwayScoreInputs score_inputs_at(const Track& track, std::size_t index, const Runway& runway) {
  if (index >= track.points.size()) throw InvalidArgument("runway score: point index out of range");
  const auto& pt = track.points[index];
  RunwayScoreInputs in;
  in.distance_nm = geo::distance_to_threshold_km(pt, runway) / geo::kKmPerNm;
  in.runway_length_ft = runway.length;
  in.course_difference_deg = geo::course_difference(pt.course, runway.centerline_course);
  in.lateral_deviation_ft = std::abs(geo::centerline_offset(pt, runway).cross_km) * geo::kFeetPerKm;
  bool same_runway = !track.runway_id || normalize_key(*track.runway_id) == normalize_key(runway.runway_id);
  in.scratchpad_reported = track.scratchpad_runway.value_or(false) && same_runway;
  return in;
}

}  // namespace rotortrack
