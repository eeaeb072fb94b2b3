#include "rotortrack/trackdata/io.hpp"

#include <cstdint>
#include <unordered_set>
#include <variant>

#include "json.hpp"
#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"

namespace rotortrack {

using json = nlohmann::ordered_json;

namespace {

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ParseError(std::string(key) + " must be a string or null");
  return it->get<std::string>();
}

double number_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing ") + key);
  if (!it->is_number()) throw ParseError(std::string(key) + " must be a number");
  return it->get<double>();
}

Track parse_track_line(std::string_view line) {
  json obj = json::parse(line);
  if (!obj.is_object()) throw ParseError("record is not a JSON object");
  Track t;
  auto id = obj.find("track_id");
  if (id == obj.end() || !id->is_string()) throw ParseError("track_id must be a string");
  t.track_id = id->get<std::string>();
  t.callsign = optional_string(obj, "callsign");
  t.mode_s = optional_string(obj, "mode_s");
  t.tail_number = optional_string(obj, "tail_number");
  t.declared_type = optional_string(obj, "aircraft_type");
  t.arrival_airport = optional_string(obj, "arrival_airport");
  t.runway_id = optional_string(obj, "runway_id");
  if (auto sp = obj.find("scratchpad_runway"); sp != obj.end() && !sp->is_null()) {
    if (!sp->is_boolean()) throw ParseError("scratchpad_runway must be a boolean or null");
    t.scratchpad_runway = sp->get<bool>();
  }
  auto pts = obj.find("points");
  if (pts == obj.end() || !pts->is_array()) throw ParseError("points must be an array");
  t.points.reserve(pts->size());
  for (const auto& p : *pts) {
    if (!p.is_object()) throw ParseError("point is not an object");
    t.points.push_back({number_field(p, "t"), number_field(p, "lat"), number_field(p, "lon"),
                        number_field(p, "alt"), number_field(p, "course"), number_field(p, "gs")});
  }
  return t;
}

json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

TrackLoad parse_tracks(std::string_view text, OnBadRecord on_bad) {
  struct Line {
    std::size_t number;
    std::string_view text;
  };
  std::vector<Line> lines;
  std::size_t start = 0;
  std::size_t number = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") != std::string_view::npos) lines.push_back({number, line});
    start = end + 1;
  }

  std::vector<std::variant<Track, std::string>> parsed(lines.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t n = 0; n < static_cast<std::int64_t>(lines.size()); ++n) {
    auto& slot = parsed[static_cast<std::size_t>(n)];
    try {
      Track t = parse_track_line(lines[static_cast<std::size_t>(n)].text);
      if (auto why = check_track(t)) {
        slot = *why;
      } else {
        slot = std::move(t);
      }
    } catch (const json::exception& e) {
      slot = std::string("malformed JSON: ") + e.what();
    } catch (const ParseError& e) {
      slot = std::string(e.what());
    }
  }

  TrackLoad out;
  std::unordered_set<std::string> seen;
  for (std::size_t n = 0; n < parsed.size(); ++n) {
    std::string reason;
    if (auto* t = std::get_if<Track>(&parsed[n])) {
      if (seen.insert(t->track_id).second) {
        out.tracks.push_back(std::move(*t));
        continue;
      }
      reason = "duplicate track_id " + t->track_id;
    } else {
      reason = std::get<std::string>(parsed[n]);
    }
    if (on_bad == OnBadRecord::abort) throw ParseError(reason, lines[n].number);
    out.rejects.push_back({lines[n].number, std::move(reason)});
  }
  return out;
}

TrackLoad load_tracks(const std::filesystem::path& path, OnBadRecord on_bad) {
  std::string text = read_text(path);
  try {
    return parse_tracks(text, on_bad);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::string track_to_json(const Track& t) {
  json obj;
  obj["track_id"] = t.track_id;
  obj["callsign"] = optional_json(t.callsign);
  obj["mode_s"] = optional_json(t.mode_s);
  obj["tail_number"] = optional_json(t.tail_number);
  obj["aircraft_type"] = optional_json(t.declared_type);
  obj["arrival_airport"] = optional_json(t.arrival_airport);
  obj["runway_id"] = optional_json(t.runway_id);
  obj["scratchpad_runway"] = t.scratchpad_runway ? json(*t.scratchpad_runway) : json(nullptr);
  json pts = json::array();
  for (const auto& p : t.points) {
    pts.push_back({{"t", p.t}, {"lat", p.lat}, {"lon", p.lon}, {"alt", p.alt}, {"course", p.course}, {"gs", p.gs}});
  }
  obj["points"] = std::move(pts);
  return obj.dump();
}

void save_tracks(const std::filesystem::path& path, std::span<const Track> tracks) {
  std::string text;
  for (const auto& t : tracks) {
    text += track_to_json(t);
    text += '\n';
  }
  write_atomic(path, text);
}

std::map<std::string, Runway> load_runways(const std::filesystem::path& path) {
  std::map<std::string, Runway> out;
  for (const auto& row : csv::read(path, kRunwaysHeader)) {
    auto fail = [&](const std::string& why) { throw ParseError(path.string() + ": " + why, row.line); };
    if (row.fields.size() != 6) fail("expected 6 fields");
    Runway r;
    r.runway_id = row.fields[0];
    try {
      std::size_t used = 0;
      double* targets[] = {&r.threshold_lat, &r.threshold_lon, &r.threshold_elev, &r.centerline_course, &r.length};
      for (std::size_t i = 0; i < 5; ++i) {
        *targets[i] = std::stod(row.fields[i + 1], &used);
        if (used != row.fields[i + 1].size()) fail("trailing characters in number");
      }
    } catch (const std::logic_error&) {
      fail("bad number");
    }
    if (auto why = check_runway(r)) fail(*why);
    if (!out.emplace(r.runway_id, r).second) fail("duplicate runway_id " + r.runway_id);
  }
  return out;
}

void save_runways(const std::filesystem::path& path, std::span<const Runway> runways) {
  std::string text(kRunwaysHeader);
  text += '\n';
  for (const auto& r : runways) {
    text += csv::join({r.runway_id, csv::number(r.threshold_lat), csv::number(r.threshold_lon),
                       csv::number(r.threshold_elev), csv::number(r.centerline_course),
                       csv::number(r.length)});
    text += '\n';
  }
  write_atomic(path, text);
}

}  // namespace rotortrack
