#include "rotortrack/synthgen/synthgen.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <optional>
#include <random>

#include <fmt/format.h>

#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"
#include "rotortrack/trackdata/geo.hpp"
#include "rotortrack/trackdata/io.hpp"
#include "rotortrack/trackdata/registration.hpp"
#include "rotortrack/trackdata/window.hpp"

namespace rotortrack {

std::vector<HelicopterRoute> default_helicopter_routes() {
  return {{{-2.0, 22.0}, {-1.5, 8.0}, {-0.5, 2.0}},   {{-16.0, 15.0}, {-5.0, 6.0}, {-0.5, 2.0}},
          {{-20.0, -14.0}, {-10.0, -7.0}, {-6.0, -4.0}}, {{-24.0, 2.0}, {-12.0, -2.0}, {-6.0, -4.0}},
          {{16.0, 20.0}, {8.0, 10.0}, {5.0, 6.0}},      {{24.0, 6.0}, {12.0, 8.0}, {5.0, 6.0}},
          {{-12.0, 24.0}, {-6.0, 12.0}, {-3.0, 5.5}},   {{-22.0, 8.0}, {-10.0, 7.0}, {-3.0, 5.5}}};
}

ClassProfile default_helicopter_profile() {
  ClassProfile p;
  p.speed_kt = {40, 120};
  p.cruise_kt = {80, 120};
  p.final_kt = {40, 60};
  p.cruise_agl_ft = {500, 1200};
  p.descent_fpm = {300, 700};
  p.turn_rate_dps = {3, 6};
  p.final_nm = {0, 0};
  p.start_km = {0, 0};
  p.wander_dps = 0.5;
  return p;
}

ClassProfile default_general_aviation_profile() {
  ClassProfile p;
  p.speed_kt = {60, 140};
  p.cruise_kt = {95, 140};
  p.final_kt = {60, 80};
  p.cruise_agl_ft = {1500, 3000};
  p.descent_fpm = {400, 800};
  p.turn_rate_dps = {2, 3};
  p.final_nm = {1.5, 4};
  p.start_km = {15, 25};
  p.alignment_noise_ft = 120;
  return p;
}

ClassProfile default_commercial_profile() {
  ClassProfile p;
  p.speed_kt = {120, 180};
  p.cruise_kt = {160, 180};
  p.final_kt = {125, 145};
  p.cruise_agl_ft = {3000, 5000};
  p.descent_fpm = {700, 1000};
  p.turn_rate_dps = {1, 1.5};
  p.final_nm = {7, 12};
  p.start_km = {20, 35};
  p.alignment_noise_ft = 30;
  return p;
}

namespace {

void check_profile(const ClassProfile& p, std::string_view name) {
  for (const Band* b : {&p.speed_kt, &p.cruise_kt, &p.final_kt, &p.cruise_agl_ft, &p.descent_fpm, &p.turn_rate_dps,
                        &p.final_nm, &p.start_km}) {
    if (!b->valid() || !std::isfinite(b->min) || !std::isfinite(b->max) || b->min < 0) {
      throw InvalidArgument(fmt::format("scenario: {} profile has an empty or negative band", name));
    }
  }
  if (p.speed_kt.min <= 0 || p.final_kt.min <= 0 || p.descent_fpm.min <= 0 || p.turn_rate_dps.min <= 0) {
    throw InvalidArgument(fmt::format("scenario: {} profile needs positive speeds, rates and distances", name));
  }
  if (p.alignment_noise_ft < 0 || p.wander_dps < 0) {
    throw InvalidArgument(fmt::format("scenario: {} profile noise must be non-negative", name));
  }
}

}  // namespace

void ScenarioSpec::check() const {
  if (auto why = check_runway(runway)) throw InvalidArgument("scenario: " + *why);
  check_profile(helicopter, "helicopter");
  check_profile(general_aviation_profile, "general aviation");
  check_profile(commercial_profile, "commercial");
  for (const ClassProfile* p : {&general_aviation_profile, &commercial_profile}) {
    if (p->final_nm.min <= 0 || p->start_km.min <= 0) {
      throw InvalidArgument("scenario: fixed-wing final length and start distance must be positive");
    }
  }
  if (helicopters > 0 && helicopter_routes.empty()) {
    throw InvalidArgument("scenario: helicopters need at least one route");
  }
  for (const auto& r : helicopter_routes) {
    if (r.size() < 2) throw InvalidArgument("scenario: a helicopter route needs an entry point and a helipad");
    if (std::hypot(r.back().east_km, r.back().north_km) > kMaxApproachNm * geo::kKmPerNm) {
      throw InvalidArgument("scenario: helipad farther than the approach cutoff");
    }
  }
  if (route_jitter_km < 0) throw InvalidArgument("scenario: route jitter must be non-negative");
  if (!(sample_interval_s > 0.5)) throw InvalidArgument("scenario: sample interval must exceed 0.5 s");
  if (position_noise_m < 0 || course_noise_deg < 0 || speed_noise_kt < 0) {
    throw InvalidArgument("scenario: noise levels must be non-negative");
  }
  if (min_points < kWindowLength) throw InvalidArgument("scenario: min_points below the window length");
}

std::string_view to_string(AircraftCategory c) {
  switch (c) {
    case AircraftCategory::helicopter: return kHelicopterClass;
    case AircraftCategory::general_aviation: return kGeneralAviationClass;
    case AircraftCategory::commercial: return kCommercialClass;
  }
  return "unknown";
}

LabelMap Scenario::labels() const {
  LabelMap out;
  for (std::size_t i = 0; i < tracks.size(); ++i) out.emplace(tracks[i].track_id, to_string(categories[i]));
  return out;
}

namespace {

constexpr double kKmPerSecPerKt = geo::kKmPerNm / 3600.0;

// Bit-level deterministic draws; avoids the implementation-defined
// distributions of <random>.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(attempt)};
    engine_.seed(seq);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double uniform(const Band& b) { return uniform(b.min, b.max); }
  double normal() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * geo::kPi * u2);
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return uniform() < p; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct Vec {
  double e = 0;
  double n = 0;
};

Vec operator+(Vec a, Vec b) { return {a.e + b.e, a.n + b.n}; }
Vec operator-(Vec a, Vec b) { return {a.e - b.e, a.n - b.n}; }
Vec operator*(double k, Vec a) { return {k * a.e, k * a.n}; }
double norm(Vec a) { return std::hypot(a.e, a.n); }
Vec unit(double course_deg) {
  double r = geo::radians(course_deg);
  return {std::sin(r), std::cos(r)};
}
double bearing(Vec from, Vec to) {
  double b = std::atan2(to.e - from.e, to.n - from.n) * 180.0 / geo::kPi;
  return b < 0 ? b + 360.0 : b;
}
double wrap180(double d) {
  d = std::fmod(d + 180.0, 360.0);
  if (d < 0) d += 360.0;
  return d - 180.0;
}
double wrap360(double d) {
  d = std::fmod(d, 360.0);
  if (d < 0) d += 360.0;
  return d >= 360.0 ? 0.0 : d;
}

struct PathPoint {
  Vec p;
  double gs_kt = 0;
};

constexpr std::size_t kMaxPathPoints = 900;

// Fly from `pos` toward `target` with a rate-limited turn, optional random
// wander, and a speed that blends from cruise to final inside `slow_km`.
// Stops once the next step would reach the target. Returns false if the
// target was not reached within kMaxPathPoints.
bool steer_to(std::vector<PathPoint>& path, Vec& pos, double& heading, Vec target, double v_cruise,
              double v_final, double slow_km, double max_turn_dps, double wander_dps, double dt, Stream& rng,
              bool land_on_target, double capture_km = 0.0) {
  double wander = 0;
  const double decay = std::exp(-dt / 20.0);
  while (path.size() < kMaxPathPoints) {
    double d = norm(target - pos);
    double blend = std::clamp((d - 0.3) / std::max(slow_km - 0.3, 1e-6), 0.0, 1.0);
    double speed = v_final + (v_cruise - v_final) * blend;
    double step = speed * kKmPerSecPerKt * dt;
    if (d <= std::max(step, capture_km)) {
      if (land_on_target) {
        pos = target;
        path.push_back({pos, speed});
      }
      return true;
    }
    wander = wander * decay + wander_dps * std::sqrt(1.0 - decay * decay) * rng.normal();
    double err = wrap180(bearing(pos, target) - heading);
    // Tighter turns are allowed close in so the approach cannot orbit the target.
    double limit = d < 1.5 ? 3.0 * max_turn_dps : max_turn_dps;
    double turn = std::clamp(err / 8.0 + wander * std::min(1.0, d / 2.0), -limit, limit);
    heading = wrap360(heading + turn * dt);
    pos = pos + step * unit(heading);
    path.push_back({pos, speed});
  }
  return false;
}

std::optional<std::vector<PathPoint>> helicopter_path(const ScenarioSpec& spec, Stream& rng) {
  const auto& prof = spec.helicopter;
  const auto& route = spec.helicopter_routes[rng.pick(spec.helicopter_routes.size())];
  std::vector<Vec> legs;
  for (std::size_t i = 0; i < route.size(); ++i) {
    double sigma = i + 1 == route.size() ? 0.05 : i == 0 ? 2.5 * spec.route_jitter_km : spec.route_jitter_km;
    legs.push_back({route[i].east_km + sigma * rng.normal(), route[i].north_km + sigma * rng.normal()});
  }
  Vec pos = legs[0];
  double heading = wrap360(bearing(pos, legs[1]) + rng.uniform(-20.0, 20.0));
  double v_c = rng.uniform(prof.cruise_kt);
  double v_f = rng.uniform(prof.final_kt);
  double max_turn = rng.uniform(prof.turn_rate_dps);

  std::vector<PathPoint> path{{pos, v_c}};
  for (std::size_t i = 1; i < legs.size(); ++i) {
    bool last = i + 1 == legs.size();
    // Intermediate turn points are passed at cruise speed; only the pad leg slows down.
    if (!steer_to(path, pos, heading, legs[i], v_c, last ? v_f : v_c, last ? 4.0 : 0.0, max_turn, prof.wander_dps,
                  spec.sample_interval_s, rng, last, last ? 0.0 : 0.8)) {
      return std::nullopt;
    }
  }
  return path;
}

std::optional<std::vector<PathPoint>> fixed_wing_path(const ScenarioSpec& spec, const ClassProfile& prof,
                                                       double spread_deg, Stream& rng) {
  const double course = spec.runway.centerline_course;
  const Vec u = unit(course);
  const double final_km = rng.uniform(prof.final_nm) * geo::kKmPerNm;
  const Vec intercept = -final_km * u;
  double out_bearing = course + 180.0 + rng.uniform(-spread_deg, spread_deg);
  Vec pos = intercept + rng.uniform(prof.start_km) * unit(out_bearing);
  double heading = wrap360(bearing(pos, intercept) + rng.uniform(-20.0, 20.0));
  double v_c = rng.uniform(prof.cruise_kt);
  double v_f = rng.uniform(prof.final_kt);
  double max_turn = rng.uniform(prof.turn_rate_dps);
  const double dt = spec.sample_interval_s;

  std::vector<PathPoint> path{{pos, v_c}};
  if (!steer_to(path, pos, heading, intercept, v_c, v_c, 1.0, max_turn, 0.0, dt, rng, false)) return std::nullopt;

  // Final: along-track position runs to the threshold; the lateral offset
  // decays from wherever the join happened onto a slow random wander.
  const double c = geo::radians(course);
  double along = pos.e * std::sin(c) + pos.n * std::cos(c);
  const double cross0 = pos.e * std::cos(c) - pos.n * std::sin(c);
  const double sigma_km = prof.alignment_noise_ft / geo::kFeetPerKm;
  const double tau = 40.0;
  const double decay = std::exp(-dt / tau);
  double wander = sigma_km * rng.normal();
  double elapsed = 0;
  // Slow down over the last 60% of the final.
  const double decel_km = std::max(-along, 1e-6) * 0.6;
  while (path.size() < kMaxPathPoints) {
    double speed = v_f + (v_c - v_f) * std::clamp(-along / decel_km, 0.0, 1.0);
    along = std::min(0.0, along + speed * kKmPerSecPerKt * dt);
    elapsed += dt;
    wander = wander * decay + sigma_km * std::sqrt(1.0 - decay * decay) * rng.normal();
    double cross = cross0 * std::exp(-elapsed / 15.0) + wander;
    Vec p{along * std::sin(c) + cross * std::cos(c), along * std::cos(c) - cross * std::sin(c)};
    path.push_back({p, speed});
    if (along >= 0.0) return path;
  }
  return std::nullopt;
}

// Straight inbound leg in front of the first point so the track has at
// least `min_points` samples.
void extend_backward(std::vector<PathPoint>& path, std::size_t min_points, double dt) {
  if (path.size() >= min_points || path.size() < 2) return;
  Vec dir = path[1].p - path[0].p;
  double len = norm(dir);
  if (len <= 0) dir = {0, 1}, len = 1;
  dir = (1.0 / len) * dir;
  const double speed = path[0].gs_kt;
  const double step = speed * kKmPerSecPerKt * dt;
  std::vector<PathPoint> lead;
  for (std::size_t k = min_points - path.size(); k >= 1; --k) {
    lead.push_back({path[0].p - (step * static_cast<double>(k)) * dir, speed});
  }
  path.insert(path.begin(), lead.begin(), lead.end());
}

struct TypeInfo {
  std::string_view designator;
  std::string_view model;
  std::string_view manufacturer;
};

constexpr std::array<TypeInfo, 8> kHelicopterTypes{{{"EC30", "EC130 T2", "EUROCOPTER"},
                                                    {"EC35", "EC135 P2+", "EUROCOPTER"},
                                                    {"AS50", "AS350 B3", "EUROCOPTER"},
                                                    {"B407", "407", "BELL"},
                                                    {"B06", "206L-4", "BELL"},
                                                    {"R44", "R44 II", "ROBINSON"},
                                                    {"S76", "S-76C", "SIKORSKY"},
                                                    {"A109", "A109E", "AGUSTA"}}};
constexpr std::array<TypeInfo, 5> kGeneralAviationTypes{{{"C172", "172S", "CESSNA"},
                                                         {"PA28", "PA-28-181", "PIPER"},
                                                         {"SR22", "SR22", "CIRRUS"},
                                                         {"BE36", "A36", "BEECH"},
                                                         {"C182", "182T", "CESSNA"}}};
constexpr std::array<TypeInfo, 4> kCommercialTypes{{{"B738", "737-800", "BOEING"},
                                                    {"A320", "A320-214", "AIRBUS"},
                                                    {"E75L", "ERJ 170-200 LR", "EMBRAER"},
                                                    {"CRJ9", "CL-600-2D24", "BOMBARDIER"}}};
constexpr std::array<std::string_view, 2> kPseudoTypes{"HELO", "HELI"};
constexpr std::array<std::string_view, 4> kAirlines{"AAL", "SWA", "UAL", "SKW"};

std::string tail_for(std::size_t index, Stream& rng) {
  std::string letters;
  for (int i = 0; i < 2; ++i) letters += static_cast<char>('A' + rng.pick(26));
  return fmt::format("N{}{}", 100 + index, letters);
}

// Distinct for every index below 2^20 (odd multiplier modulo a power of two).
std::string mode_s_for(std::size_t index) {
  auto code = 0xA00000u + static_cast<std::uint32_t>((index * 2654435761u) & 0xFFFFFu);
  return fmt::format("{:06X}", code);
}

struct Generated {
  Track track;
  std::optional<RegistrationRecord> registration;
};

void attach_metadata(Generated& g, AircraftCategory cat, std::size_t index, const ScenarioSpec& spec, Stream& rng) {
  Track& t = g.track;
  t.arrival_airport = spec.airport;
  std::string tail = tail_for(index, rng);
  std::string mode_s = mode_s_for(index);
  TypeInfo type{};
  double p_tail = 0, p_mode_s_only = 0;
  bool rotorcraft = cat == AircraftCategory::helicopter;

  switch (cat) {
    case AircraftCategory::helicopter: {
      type = kHelicopterTypes[rng.pick(kHelicopterTypes.size())];
      double r = rng.uniform();
      if (r < 0.3) {
        t.declared_type = std::string(type.designator);
      } else if (r < 0.5) {
        t.declared_type = std::string(kPseudoTypes[rng.pick(kPseudoTypes.size())]);
      }
      t.callsign = rng.chance(0.5) ? tail : fmt::format("LIFE{}", 1 + rng.pick(40));
      p_tail = 0.75;
      p_mode_s_only = 0.10;
      t.scratchpad_runway = false;
      break;
    }
    case AircraftCategory::general_aviation: {
      type = kGeneralAviationTypes[rng.pick(kGeneralAviationTypes.size())];
      if (rng.chance(0.85)) t.declared_type = std::string(type.designator);
      t.callsign = tail;
      p_tail = 0.70;
      p_mode_s_only = 0.10;
      t.runway_id = spec.runway.runway_id;
      t.scratchpad_runway = rng.chance(0.6);
      break;
    }
    case AircraftCategory::commercial: {
      type = kCommercialTypes[rng.pick(kCommercialTypes.size())];
      t.declared_type = std::string(type.designator);
      t.callsign = fmt::format("{}{}", kAirlines[rng.pick(kAirlines.size())], 100 + rng.pick(9000));
      p_tail = 0.5;
      p_mode_s_only = 0.1;
      t.runway_id = spec.runway.runway_id;
      t.scratchpad_runway = rng.chance(0.9);
      break;
    }
  }

  double r = rng.uniform();
  t.mode_s = mode_s;
  if (r < p_tail + p_mode_s_only) {
    if (r < p_tail) t.tail_number = tail;
    g.registration = RegistrationRecord{tail,
                                        mode_s,
                                        std::string(type.model),
                                        std::string(type.manufacturer),
                                        rotorcraft ? AircraftClass::rotorcraft : AircraftClass::fixed_wing,
                                        std::string(type.designator)};
  } else if (rng.chance(0.5)) {
    t.tail_number = tail;  // declared but not in the registry snapshot
  }
}

std::optional<Generated> try_generate(const ScenarioSpec& spec, AircraftCategory cat, std::size_t index,
                                      std::uint64_t attempt) {
  Stream rng(spec.seed, index, attempt);
  const ClassProfile& prof = cat == AircraftCategory::helicopter         ? spec.helicopter
                             : cat == AircraftCategory::general_aviation ? spec.general_aviation_profile
                                                                         : spec.commercial_profile;
  std::optional<std::vector<PathPoint>> path;
  switch (cat) {
    case AircraftCategory::helicopter: path = helicopter_path(spec, rng); break;
    case AircraftCategory::general_aviation: path = fixed_wing_path(spec, prof, 75.0, rng); break;
    case AircraftCategory::commercial: path = fixed_wing_path(spec, prof, 45.0, rng); break;
  }
  if (!path || path->size() < 2) return std::nullopt;
  const double dt = spec.sample_interval_s;
  extend_backward(*path, spec.min_points, dt);
  const std::size_t n = path->size();

  // Altitude above the threshold: cruise until the descent at the drawn rate
  // would reach the ground exactly at the last point.
  const double cruise = rng.uniform(prof.cruise_agl_ft);
  const double rate = rng.uniform(prof.descent_fpm);
  const double t0 = 1.7e9 + 600.0 * static_cast<double>(index) + rng.uniform(0.0, 60.0);
  const double t_end = t0 + dt * static_cast<double>(n - 1);
  const double lat_scale = 180.0 / geo::kPi / geo::kEarthRadiusKm;
  const double lon_scale = lat_scale / std::cos(geo::radians(spec.runway.threshold_lat));

  Generated g;
  g.track.track_id = fmt::format("SYN{:05}", index + 1);
  g.track.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pp = (*path)[i];
    Vec ahead = i + 1 < n ? (*path)[i + 1].p - pp.p : pp.p - (*path)[i - 1].p;
    double course = norm(ahead) > 0 ? bearing({0, 0}, ahead) : 0.0;
    double t = t0 + dt * static_cast<double>(i) + (i == 0 || i + 1 == n ? 0.0 : rng.uniform(-0.25, 0.25));
    double agl = std::min(cruise, rate * (t_end - t) / 60.0) + 20.0 * rng.normal();
    double noise_km = spec.position_noise_m / 1000.0;
    Vec p = pp.p + Vec{noise_km * rng.normal(), noise_km * rng.normal()};
    TrackPoint tp;
    tp.t = t;
    tp.lat = spec.runway.threshold_lat + p.n * lat_scale;
    tp.lon = spec.runway.threshold_lon + p.e * lon_scale;
    tp.alt = spec.runway.threshold_elev + std::max(0.0, agl);
    tp.course = wrap360(course + spec.course_noise_deg * rng.normal());
    tp.gs = std::clamp(pp.gs_kt + spec.speed_noise_kt * rng.normal(), prof.speed_kt.min, prof.speed_kt.max);
    g.track.points.push_back(tp);
  }

  if (check_track(g.track)) return std::nullopt;
  auto outcome = window_arrival(g.track, spec.runway);
  if (!outcome.ok() || outcome.window->closest_index + 3 < n) return std::nullopt;
  attach_metadata(g, cat, index, spec, rng);
  return g;
}

constexpr std::uint64_t kMaxAttempts = 200;

}  // namespace

Scenario generate(const ScenarioSpec& spec) {
  spec.check();
  Scenario out;
  out.runway = spec.runway;
  for (auto t : kHelicopterTypes) out.helicopter_types.insert(std::string(t.designator));
  for (auto t : kPseudoTypes) out.pseudo_types.insert(std::string(t));

  std::vector<AircraftCategory> cats;
  cats.insert(cats.end(), spec.helicopters, AircraftCategory::helicopter);
  cats.insert(cats.end(), spec.general_aviation, AircraftCategory::general_aviation);
  cats.insert(cats.end(), spec.commercial, AircraftCategory::commercial);
  Stream order(spec.seed, ~std::uint64_t{0}, 0);
  for (std::size_t i = cats.size(); i > 1; --i) std::swap(cats[i - 1], cats[order.pick(i)]);

  std::vector<Generated> made(cats.size());
  std::vector<std::exception_ptr> errors(cats.size());
  const auto n = static_cast<std::ptrdiff_t>(cats.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto idx = static_cast<std::size_t>(i);
    try {
      for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        if (auto g = try_generate(spec, cats[idx], idx, attempt)) {
          made[idx] = std::move(*g);
          break;
        }
      }
      if (made[idx].track.points.empty()) {
        throw InvalidArgument(fmt::format("scenario: could not generate a valid {} track at index {}",
                                          to_string(cats[idx]), idx));
      }
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (std::size_t i = 0; i < made.size(); ++i) {
    out.tracks.push_back(std::move(made[i].track));
    out.categories.push_back(cats[i]);
    if (made[i].registration) out.registration.push_back(std::move(*made[i].registration));
  }
  return out;
}

void write_scenario(const Scenario& scenario, const std::filesystem::path& dir) {
  save_tracks(dir / kTracksFile, scenario.tracks);
  write_atomic(dir / kLabelsFile, labels_to_csv(scenario.labels()));
  save_runways(dir / kRunwaysFile, std::span(&scenario.runway, 1));
  save_registration(dir / kRegistrationFile, scenario.registration);
  write_atomic(dir / kHelicopterTypesFile, type_list_text(scenario.helicopter_types));
  write_atomic(dir / kPseudoTypesFile, type_list_text(scenario.pseudo_types));
}

}  // namespace rotortrack
