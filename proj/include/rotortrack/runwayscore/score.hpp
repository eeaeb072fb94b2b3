#pragma once

#include <array>

#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

struct RunwayScoreInputs {
  double distance_nm = 0;           // from the threshold at closest approach
  double runway_length_ft = 0;
  double course_difference_deg = 0;  // folded to [0, 180]
  double lateral_deviation_ft = 0;   // from the extended centerline
  bool scratchpad_reported = false;
};

/// Component scales and weights. Components, in weight order: distance,
/// course, lateral deviation, runway length, scratchpad.
struct RunwayScoreParams {
  double distance_scale_nm = 1.0;
  double course_scale_deg = 30.0;
  double lateral_scale_ft = 500.0;
  double length_scale_ft = 3000.0;
  std::array<double, 5> weights{0.3, 0.25, 0.25, 0.1, 0.1};

  void check() const;
};

/// Per-component scores, each in [0, 1].
std::array<double, 5> runway_score_components(const RunwayScoreInputs& in, const RunwayScoreParams& params = {});

/// Weighted mean of the components; 1 means a confident runway landing.
/// Throws InvalidArgument for negative or non-finite inputs.
double runway_score(const RunwayScoreInputs& in, const RunwayScoreParams& params = {});

/// Inputs measured at the point `index` of `track` against `runway`. The
/// scratchpad counts only when the track names no runway or names this one.
RunwayScoreInputs score_inputs_at(const Track& track, std::size_t index, const Runway& runway);

}  // namespace rotortrack
