#include "rotortrack/pipeline/config.hpp"

#include <set>

#include "json.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"

namespace rotortrack {

using json = nlohmann::ordered_json;

std::filesystem::path PipelinePaths::resolve(const std::filesystem::path& p) const {
  return p.is_absolute() ? p : out_dir / p;
}

void PipelineConfig::apply_seed(std::uint64_t s) {
  seed = s;
  scenario.seed = s;
  model.seed = s;
  train.seed = s + 1;
}

void PipelineConfig::check() const {
  scenario.check();
  train.check();
  runway_score.check();
  if (model.input_length != kWindowLength || model.input_channels != kFeatureCount) {
    throw InvalidArgument("config: model input must be the window shape");
  }
  if (train_count < kMinTrainingWindows) throw InvalidArgument("config: train_count below the training minimum");
  if (!(percentile > 0 && percentile <= 100)) throw InvalidArgument("config: percentile must be in (0, 100]");
  if (histogram_bins < 1) throw InvalidArgument("config: histogram_bins must be >= 1");
  if (!(runway_delta >= 0 && runway_delta <= 1)) throw InvalidArgument("config: runway_delta must be in [0, 1]");
}

namespace {

// Reads optional keys from one object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ParseError("config: '" + path_ + "' must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ParseError("config: '" + path_ + "." + key + "': " + e.what());
    }
  }

  void path(const char* key, std::filesystem::path& out) {
    std::string s = out.string();
    get(key, s);
    out = s;
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string name(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) throw ParseError("config: unknown key '" + path_ + "." + key + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_band(Section& s, const char* key, Band& b) {
  if (const json* j = s.child(key)) {
    if (!j->is_array() || j->size() != 2) throw ParseError("config: '" + s.name(key) + "' must be [min, max]");
    b = {(*j)[0].get<double>(), (*j)[1].get<double>()};
  }
}

json band_json(const Band& b) { return json::array({b.min, b.max}); }

void read_profile(const json& j, const std::string& path, ClassProfile& p) {
  Section s(j, path);
  read_band(s, "speed_kt", p.speed_kt);
  read_band(s, "cruise_kt", p.cruise_kt);
  read_band(s, "final_kt", p.final_kt);
  read_band(s, "cruise_agl_ft", p.cruise_agl_ft);
  read_band(s, "descent_fpm", p.descent_fpm);
  read_band(s, "turn_rate_dps", p.turn_rate_dps);
  read_band(s, "final_nm", p.final_nm);
  read_band(s, "start_km", p.start_km);
  s.get("alignment_noise_ft", p.alignment_noise_ft);
  s.get("wander_dps", p.wander_dps);
  s.finish();
}

json profile_json(const ClassProfile& p) {
  json j;
  j["speed_kt"] = band_json(p.speed_kt);
  j["cruise_kt"] = band_json(p.cruise_kt);
  j["final_kt"] = band_json(p.final_kt);
  j["cruise_agl_ft"] = band_json(p.cruise_agl_ft);
  j["descent_fpm"] = band_json(p.descent_fpm);
  j["turn_rate_dps"] = band_json(p.turn_rate_dps);
  j["final_nm"] = band_json(p.final_nm);
  j["start_km"] = band_json(p.start_km);
  j["alignment_noise_ft"] = p.alignment_noise_ft;
  j["wander_dps"] = p.wander_dps;
  return j;
}

std::vector<ConvStage> read_stages(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ParseError("config: '" + path + "' must be an array");
  std::vector<ConvStage> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Section s(arr[i], path + "[" + std::to_string(i) + "]");
    ConvStage c;
    std::string act(to_string(c.activation));
    s.get("kernel", c.kernel);
    s.get("stride", c.stride);
    s.get("channels", c.channels);
    s.get("activation", act);
    s.finish();
    c.activation = parse_activation(act);
    out.push_back(c);
  }
  return out;
}

json stages_json(const std::vector<ConvStage>& stages) {
  json arr = json::array();
  for (const auto& c : stages) {
    arr.push_back({{"kernel", c.kernel}, {"stride", c.stride}, {"channels", c.channels},
                   {"activation", std::string(to_string(c.activation))}});
  }
  return arr;
}

}  // namespace

PipelineConfig config_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  PipelineConfig c;
  Section top(root, "config");
  std::uint64_t seed = c.seed;
  top.get("seed", seed);
  c.apply_seed(seed);
  bool strict = false;
  top.get("strict", strict);
  c.on_bad = strict ? OnBadRecord::abort : OnBadRecord::skip;

  if (const json* j = top.child("paths")) {
    Section s(*j, "paths");
    s.path("out_dir", c.paths.out_dir);
    s.path("tracks", c.paths.tracks);
    s.path("runways", c.paths.runways);
    s.path("registration", c.paths.registration);
    s.path("labels", c.paths.labels);
    s.path("helicopter_types", c.paths.helicopter_types);
    s.path("pseudo_types", c.paths.pseudo_types);
    s.path("model", c.paths.model);
    s.path("thresholds", c.paths.thresholds);
    s.path("results", c.paths.results);
    s.finish();
  }

  if (const json* j = top.child("synth")) {
    Section s(*j, "synth");
    auto& sc = c.scenario;
    s.get("helicopters", sc.helicopters);
    s.get("general_aviation", sc.general_aviation);
    s.get("commercial", sc.commercial);
    s.get("airport", sc.airport);
    s.get("sample_interval_s", sc.sample_interval_s);
    s.get("position_noise_m", sc.position_noise_m);
    s.get("course_noise_deg", sc.course_noise_deg);
    s.get("speed_noise_kt", sc.speed_noise_kt);
    s.get("min_points", sc.min_points);
    if (const json* r = s.child("runway")) {
      Section rs(*r, "synth.runway");
      rs.get("runway_id", sc.runway.runway_id);
      rs.get("threshold_lat", sc.runway.threshold_lat);
      rs.get("threshold_lon", sc.runway.threshold_lon);
      rs.get("threshold_elev", sc.runway.threshold_elev);
      rs.get("centerline_course", sc.runway.centerline_course);
      rs.get("length", sc.runway.length);
      rs.finish();
    }
    s.get("route_jitter_km", sc.route_jitter_km);
    if (const json* h = s.child("helicopter_routes")) {
      if (!h->is_array()) throw ParseError("config: helicopter_routes is a list of routes");
      sc.helicopter_routes.clear();
      for (const auto& route : *h) {
        if (!route.is_array()) throw ParseError("config: a helicopter route is a list of [east_km, north_km] points");
        HelicopterRoute r;
        for (const auto& pt : route) {
          if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
            throw ParseError("config: route points are [east_km, north_km] pairs");
          }
          r.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        sc.helicopter_routes.push_back(std::move(r));
      }
    }
    if (const json* p = s.child("profiles")) {
      Section ps(*p, "synth.profiles");
      if (const json* x = ps.child("helicopter")) read_profile(*x, "synth.profiles.helicopter", sc.helicopter);
      if (const json* x = ps.child("general_aviation")) {
        read_profile(*x, "synth.profiles.general_aviation", sc.general_aviation_profile);
      }
      if (const json* x = ps.child("commercial")) read_profile(*x, "synth.profiles.commercial", sc.commercial_profile);
      ps.finish();
    }
    s.finish();
  }

  if (const json* j = top.child("model")) {
    Section s(*j, "model");
    if (const json* e = s.child("encoder")) c.model.encoder = read_stages(*e, "model.encoder");
    if (const json* d = s.child("decoder")) c.model.decoder = read_stages(*d, "model.decoder");
    s.get("latent_dim", c.model.latent_dim);
    std::string act(to_string(c.model.latent_activation));
    s.get("latent_activation", act);
    c.model.latent_activation = parse_activation(act);
    s.finish();
  }

  if (const json* j = top.child("train")) {
    Section s(*j, "train");
    s.get("epochs", c.train.epochs);
    s.get("batch_size", c.train.batch_size);
    s.get("learning_rate", c.train.adam.lr);
    s.get("beta1", c.train.adam.beta1);
    s.get("beta2", c.train.adam.beta2);
    s.get("epsilon", c.train.adam.epsilon);
    s.get("validation_fraction", c.train.validation_fraction);
    s.get("patience", c.train.patience);
    s.get("train_count", c.train_count);
    s.finish();
  }

  if (const json* j = top.child("calibrate")) {
    Section s(*j, "calibrate");
    s.get("percentile", c.percentile);
    s.get("histogram_bins", c.histogram_bins);
    s.finish();
  }

  if (const json* j = top.child("classify")) {
    Section s(*j, "classify");
    s.get("runway_delta", c.runway_delta);
    s.finish();
  }

  if (const json* j = top.child("runway_score")) {
    Section s(*j, "runway_score");
    auto& p = c.runway_score;
    s.get("distance_scale_nm", p.distance_scale_nm);
    s.get("course_scale_deg", p.course_scale_deg);
    s.get("lateral_scale_ft", p.lateral_scale_ft);
    s.get("length_scale_ft", p.length_scale_ft);
    s.get("weights", p.weights);
    s.finish();
  }
  top.finish();
  c.check();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  try {
    return config_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["strict"] = c.on_bad == OnBadRecord::abort;
  j["paths"] = {{"out_dir", c.paths.out_dir.string()},
                {"tracks", c.paths.tracks.string()},
                {"runways", c.paths.runways.string()},
                {"registration", c.paths.registration.string()},
                {"labels", c.paths.labels.string()},
                {"helicopter_types", c.paths.helicopter_types.string()},
                {"pseudo_types", c.paths.pseudo_types.string()},
                {"model", c.paths.model.string()},
                {"thresholds", c.paths.thresholds.string()},
                {"results", c.paths.results.string()}};
  const auto& sc = c.scenario;
  json routes = json::array();
  for (const auto& r : sc.helicopter_routes) {
    json pts = json::array();
    for (const auto& w : r) pts.push_back({w.east_km, w.north_km});
    routes.push_back(pts);
  }
  j["synth"] = {{"helicopters", sc.helicopters},
                {"general_aviation", sc.general_aviation},
                {"commercial", sc.commercial},
                {"airport", sc.airport},
                {"runway",
                 {{"runway_id", sc.runway.runway_id},
                  {"threshold_lat", sc.runway.threshold_lat},
                  {"threshold_lon", sc.runway.threshold_lon},
                  {"threshold_elev", sc.runway.threshold_elev},
                  {"centerline_course", sc.runway.centerline_course},
                  {"length", sc.runway.length}}},
                {"helicopter_routes", routes},
                {"route_jitter_km", sc.route_jitter_km},
                {"sample_interval_s", sc.sample_interval_s},
                {"position_noise_m", sc.position_noise_m},
                {"course_noise_deg", sc.course_noise_deg},
                {"speed_noise_kt", sc.speed_noise_kt},
                {"min_points", sc.min_points},
                {"profiles",
                 {{"helicopter", profile_json(sc.helicopter)},
                  {"general_aviation", profile_json(sc.general_aviation_profile)},
                  {"commercial", profile_json(sc.commercial_profile)}}}};
  j["model"] = {{"encoder", stages_json(c.model.encoder)},
                {"latent_dim", c.model.latent_dim},
                {"latent_activation", std::string(to_string(c.model.latent_activation))},
                {"decoder", stages_json(c.model.decoder)}};
  j["train"] = {{"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"learning_rate", c.train.adam.lr},
                {"beta1", c.train.adam.beta1},
                {"beta2", c.train.adam.beta2},
                {"epsilon", c.train.adam.epsilon},
                {"validation_fraction", c.train.validation_fraction},
                {"patience", c.train.patience},
                {"train_count", c.train_count}};
  j["calibrate"] = {{"percentile", c.percentile}, {"histogram_bins", c.histogram_bins}};
  j["classify"] = {{"runway_delta", c.runway_delta}};
  j["runway_score"] = {{"distance_scale_nm", c.runway_score.distance_scale_nm},
                       {"course_scale_deg", c.runway_score.course_scale_deg},
                       {"lateral_scale_ft", c.runway_score.lateral_scale_ft},
                       {"length_scale_ft", c.runway_score.length_scale_ft},
                       {"weights", c.runway_score.weights}};
  return j.dump(2) + "\n";
}

}  // namespace rotortrack
