#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>
#include <omp.h>

#include "rotortrack/error.hpp"
#include "rotortrack/runwayscore/score.hpp"
#include "rotortrack/synthgen/synthgen.hpp"
#include "rotortrack/trackdata/io.hpp"
#include "rotortrack/trackdata/window.hpp"

using namespace rotortrack;

namespace {

const Scenario& default_scenario() {
  static const Scenario s = generate(ScenarioSpec{});
  return s;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Cross-track distance in feet from a local flat-earth frame built here,
// independent of the library's projection code.
double cross_track_ft(const TrackPoint& p, const Runway& r) {
  const double pi = 3.14159265358979323846;
  const double earth_km = 6371.0;
  double north = (p.lat - r.threshold_lat) * pi / 180.0 * earth_km;
  double east = (p.lon - r.threshold_lon) * pi / 180.0 * earth_km * std::cos(r.threshold_lat * pi / 180.0);
  double c = r.centerline_course * pi / 180.0;
  return std::abs(east * std::cos(c) - north * std::sin(c)) * 3280.839895;
}

std::map<AircraftCategory, std::vector<double>> by_class(const Scenario& s,
                                                         double (*stat)(const Track&, const Runway&)) {
  std::map<AircraftCategory, std::vector<double>> out;
  for (std::size_t i = 0; i < s.tracks.size(); ++i) out[s.categories[i]].push_back(stat(s.tracks[i], s.runway));
  return out;
}

double mean_groundspeed(const Track& t, const Runway&) {
  double sum = 0;
  for (const auto& p : t.points) sum += p.gs;
  return sum / static_cast<double>(t.points.size());
}

double final_lateral_ft(const Track& t, const Runway& r) {
  double sum = 0;
  for (std::size_t i = t.points.size() - 20; i < t.points.size(); ++i) sum += cross_track_ft(t.points[i], r);
  return sum / 20.0;
}

std::string serialized(const Scenario& s) {
  std::string out;
  for (const auto& t : s.tracks) out += track_to_json(t) + '\n';
  for (const auto& [id, cls] : s.labels()) out += id + ',' + cls + '\n';
  for (const auto& r : s.registration) out += r.n_number + ',' + r.mode_s_code.value_or("") + ',' + r.model + '\n';
  return out;
}

}  // namespace

TEST(Synthgen, ZeroCountsGiveEmptyScenario) {
  ScenarioSpec spec;
  spec.helicopters = spec.general_aviation = spec.commercial = 0;
  auto s = generate(spec);
  EXPECT_TRUE(s.tracks.empty());
  EXPECT_TRUE(s.labels().empty());
}

TEST(Synthgen, RejectsBadSpec) {
  ScenarioSpec spec;
  spec.helicopter.speed_kt = {120, 40};
  EXPECT_THROW(generate(spec), InvalidArgument);
  spec = {};
  spec.helicopter_routes = {{{1.0, 1.0}}};
  EXPECT_THROW(generate(spec), InvalidArgument);
  spec = {};
  spec.helicopter_routes = {{{30.0, 30.0}, {25.0, 25.0}}};
  EXPECT_THROW(generate(spec), InvalidArgument);
}

TEST(Synthgen, SameSeedSameBytes) {
  ScenarioSpec spec;
  spec.helicopters = spec.general_aviation = spec.commercial = 15;
  EXPECT_EQ(serialized(generate(spec)), serialized(generate(spec)));
  spec.seed = 8;
  auto other = serialized(generate(spec));
  spec.seed = 7;
  EXPECT_NE(serialized(generate(spec)), other);
}

TEST(Synthgen, ThreadCountDoesNotChangeOutput) {
  ScenarioSpec spec;
  spec.helicopters = spec.general_aviation = spec.commercial = 10;
  int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  auto one = serialized(generate(spec));
  omp_set_num_threads(4);
  auto four = serialized(generate(spec));
  omp_set_num_threads(saved);
  EXPECT_EQ(one, four);
}

TEST(Synthgen, WrittenFilesMatchInMemoryScenario) {
  ScenarioSpec spec;
  spec.helicopters = spec.general_aviation = spec.commercial = 4;
  auto s = generate(spec);
  auto dir = std::filesystem::temp_directory_path() / "rotortrack_synth_files";
  std::filesystem::remove_all(dir);
  write_scenario(s, dir);
  auto load = load_tracks(dir / kTracksFile, OnBadRecord::abort);
  ASSERT_EQ(load.tracks.size(), s.tracks.size());
  for (std::size_t i = 0; i < s.tracks.size(); ++i) EXPECT_EQ(track_to_json(load.tracks[i]), track_to_json(s.tracks[i]));
  EXPECT_EQ(load_labels(dir / kLabelsFile), s.labels());
  EXPECT_EQ(load_runways(dir / kRunwaysFile).at("07R"), s.runway);
  std::filesystem::remove_all(dir);
}

TEST(Synthgen, DefaultScenarioCountsAndValidity) {
  const auto& s = default_scenario();
  ASSERT_EQ(s.tracks.size(), 300u);
  std::map<AircraftCategory, int> counts;
  for (auto c : s.categories) ++counts[c];
  EXPECT_EQ(counts[AircraftCategory::helicopter], 100);
  EXPECT_EQ(counts[AircraftCategory::general_aviation], 100);
  EXPECT_EQ(counts[AircraftCategory::commercial], 100);
  // Round trip through the loader so the file invariants are checked too.
  std::string text;
  for (const auto& t : s.tracks) text += track_to_json(t) + '\n';
  auto load = parse_tracks(text, OnBadRecord::abort);
  ASSERT_EQ(load.tracks.size(), 300u);
  for (const auto& t : s.tracks) {
    EXPECT_GE(t.points.size(), 120u) << t.track_id;
    EXPECT_FALSE(check_track(t)) << t.track_id;
    EXPECT_TRUE(window_arrival(t, s.runway).ok()) << t.track_id;
  }
}

TEST(Synthgen, LabelsAgreeWithCategories) {
  const auto& s = default_scenario();
  auto labels = s.labels();
  for (std::size_t i = 0; i < s.tracks.size(); ++i) {
    EXPECT_EQ(labels.at(s.tracks[i].track_id), to_string(s.categories[i]));
  }
}

TEST(Synthgen, GroundspeedBandsAndOrdering) {
  const auto& s = default_scenario();
  const std::map<AircraftCategory, std::pair<double, double>> bands = {
      {AircraftCategory::helicopter, {40, 120}},
      {AircraftCategory::general_aviation, {60, 140}},
      {AircraftCategory::commercial, {120, 180}}};
  for (std::size_t i = 0; i < s.tracks.size(); ++i) {
    auto [lo, hi] = bands.at(s.categories[i]);
    for (const auto& p : s.tracks[i].points) {
      ASSERT_GE(p.gs, lo) << s.tracks[i].track_id;
      ASSERT_LE(p.gs, hi) << s.tracks[i].track_id;
    }
  }
  auto gs = by_class(s, mean_groundspeed);
  auto mean = [](const std::vector<double>& v) {
    double sum = 0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  EXPECT_LT(mean(gs[AircraftCategory::helicopter]), mean(gs[AircraftCategory::general_aviation]));
  EXPECT_LT(mean(gs[AircraftCategory::general_aviation]), mean(gs[AircraftCategory::commercial]));
}

TEST(Synthgen, FinalLateralDeviationOrderedForSeveralSeeds) {
  for (std::uint64_t seed : {7u, 21u, 1234u}) {
    ScenarioSpec spec;
    spec.seed = seed;
    spec.helicopters = spec.general_aviation = spec.commercial = 40;
    auto lat = by_class(generate(spec), final_lateral_ft);
    double c = median(lat[AircraftCategory::commercial]);
    double g = median(lat[AircraftCategory::general_aviation]);
    double h = median(lat[AircraftCategory::helicopter]);
    EXPECT_LT(c, g) << "seed " << seed;
    EXPECT_LT(g, h) << "seed " << seed;
  }
}

TEST(Synthgen, RunwayScoreSeparatesClasses) {
  const auto& s = default_scenario();
  int mid_band = 0;
  for (std::size_t i = 0; i < s.tracks.size(); ++i) {
    auto idx = closest_approach_index(s.tracks[i], s.runway);
    double score = runway_score(score_inputs_at(s.tracks[i], idx, s.runway));
    if (s.categories[i] == AircraftCategory::helicopter) {
      EXPECT_LT(score, 0.5) << s.tracks[i].track_id;
      if (score >= 0.1 && score <= 0.35) ++mid_band;
    } else {
      EXPECT_GE(score, 0.5) << s.tracks[i].track_id;
    }
  }
  EXPECT_GT(mid_band, 0);
}

TEST(Synthgen, HelicoptersStayLowAndEndOffRunway) {
  const auto& s = default_scenario();
  for (std::size_t i = 0; i < s.tracks.size(); ++i) {
    if (s.categories[i] != AircraftCategory::helicopter) continue;
    const auto& t = s.tracks[i];
    for (const auto& p : t.points) ASSERT_LE(p.alt - s.runway.threshold_elev, 1500.0) << t.track_id;
    EXPECT_GT(cross_track_ft(t.points.back(), s.runway), 500.0) << t.track_id;
  }
}
