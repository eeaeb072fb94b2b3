#include "rotortrack/identify/identify.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"
#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"
#include "rotortrack/trackdata/geo.hpp"
#include "rotortrack/trackdata/window.hpp"

namespace rotortrack {

void Thresholds::check() const {
  if (!(delta > 0) || !std::isfinite(delta)) throw InvalidArgument("thresholds: delta must be positive");
  if (!(percentile > 0 && percentile <= 100)) throw InvalidArgument("thresholds: percentile must be in (0, 100]");
  if (!(runway_delta >= 0 && runway_delta <= 1)) throw InvalidArgument("thresholds: runway delta must be in [0, 1]");
}

std::string thresholds_to_json(const Thresholds& t) {
  nlohmann::ordered_json j;
  j["delta"] = t.delta;
  j["percentile"] = t.percentile;
  j["runway_delta"] = t.runway_delta;
  return j.dump(2) + "\n";
}

Thresholds thresholds_from_json(std::string_view text) {
  Thresholds t;
  try {
    auto j = nlohmann::json::parse(text);
    t.delta = j.at("delta").get<double>();
    t.percentile = j.value("percentile", t.percentile);
    t.runway_delta = j.value("runway_delta", t.runway_delta);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("thresholds: ") + e.what());
  }
  t.check();
  return t;
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw TooFewValues("percentile of an empty list");
  if (!(p >= 0 && p <= 100)) throw InvalidArgument("percentile must be in [0, 100]");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double rank = p / 100.0 * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(rank));
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  double frac = rank - static_cast<double>(lo);
  if (frac == 0.0) return v[lo];
  return v[lo] + frac * (v[hi] - v[lo]);
}

double calibrate(std::span<const double> training_maes, double pct) {
  if (training_maes.size() < kMinCalibrationValues) {
    throw TooFewValues(fmt::format("calibrate: need at least {} values, got {}", kMinCalibrationValues,
                                   training_maes.size()));
  }
  for (double v : training_maes) {
    if (!std::isfinite(v) || v < 0) throw InvalidArgument("calibrate: values must be finite and non-negative");
  }
  if (!(pct > 0 && pct <= 100)) throw InvalidArgument("calibrate: percentile must be in (0, 100]");
  return percentile(training_maes, pct);
}

Decision decide(double mae, double runway_score, const Thresholds& t) {
  Decision d;
  if (!(mae < t.delta)) d.reasons.emplace_back(kMaeReason);
  if (!(runway_score < t.runway_delta)) d.reasons.emplace_back(kRunwayReason);
  d.is_helicopter = d.reasons.empty();
  return d;
}

ClassificationResult classify(const Autoencoder& model, const Thresholds& t, const Track& track,
                              const Runway& runway, const RunwayScoreParams& params) {
  ClassificationResult r;
  r.track_id = track.track_id;
  if (track.points.empty()) {
    r.reasons.push_back(std::string(kUnclassifiablePrefix) + "empty_track");
    return r;
  }
  std::size_t closest = closest_approach_index(track, runway);
  r.runway_score = runway_score(score_inputs_at(track, closest, runway), params);

  auto outcome = window_arrival(track, runway);
  if (!outcome.ok()) {
    r.reasons.push_back(std::string(kUnclassifiablePrefix) + std::string(to_string(outcome.rejection)));
    return r;
  }
  r.mae = reconstruction_error(model, featurize(*outcome.window, runway));
  auto d = decide(*r.mae, *r.runway_score, t);
  r.pred_is_helicopter = d.is_helicopter;
  r.reasons = std::move(d.reasons);
  return r;
}

const Runway* select_runway(const Track& track, const std::map<std::string, Runway>& runways) {
  if (runways.empty() || track.points.empty()) return nullptr;
  if (track.runway_id) {
    auto key = normalize_key(*track.runway_id);
    for (const auto& [id, rwy] : runways) {
      if (normalize_key(id) == key) return &rwy;
    }
  }
  const Runway* best = nullptr;
  double best_km = std::numeric_limits<double>::infinity();
  for (const auto& [id, rwy] : runways) {
    double d = geo::distance_to_threshold_km(track.points[closest_approach_index(track, rwy)], rwy);
    if (d < best_km) {
      best_km = d;
      best = &rwy;
    }
  }
  return best;
}

std::vector<ClassificationResult> classify_all(const Autoencoder& model, const Thresholds& t,
                                               std::span<const Track> tracks,
                                               const std::map<std::string, Runway>& runways,
                                               const RunwayScoreParams& params) {
  t.check();
  params.check();
  if (runways.empty()) throw InvalidArgument("classify: runway table is empty");
  std::vector<ClassificationResult> out(tracks.size());
  std::vector<std::exception_ptr> errors(tracks.size());
  const auto n = static_cast<std::ptrdiff_t>(tracks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const auto& track = tracks[static_cast<std::size_t>(i)];
      const Runway* rwy = select_runway(track, runways);
      if (rwy) {
        out[static_cast<std::size_t>(i)] = classify(model, t, track, *rwy, params);
      } else {
        out[static_cast<std::size_t>(i)] = {track.track_id, {}, {}, false,
                                             {std::string(kUnclassifiablePrefix) + "empty_track"}};
      }
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

std::string optional_number(const std::optional<double>& v) { return v ? csv::number(*v) : ""; }

std::optional<double> parse_optional(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'", line);
  }
}

}  // namespace

std::vector<std::string> result_fields(const ClassificationResult& r) {
  std::string reasons;
  for (std::size_t i = 0; i < r.reasons.size(); ++i) reasons += (i ? ";" : "") + r.reasons[i];
  return {r.track_id, optional_number(r.mae), optional_number(r.runway_score),
          r.pred_is_helicopter ? "true" : "false", reasons};
}

ClassificationResult result_from_fields(std::span<const std::string> fields, std::size_t line) {
  if (fields.size() != 5) throw ParseError("expected 5 result fields", line);
  ClassificationResult r;
  r.track_id = fields[0];
  r.mae = parse_optional(fields[1], line);
  r.runway_score = parse_optional(fields[2], line);
  if (fields[3] == "true") {
    r.pred_is_helicopter = true;
  } else if (fields[3] != "false") {
    throw ParseError("pred_is_helicopter must be true or false", line);
  }
  std::string_view reasons = fields[4];
  while (!reasons.empty()) {
    auto cut = reasons.find(';');
    r.reasons.emplace_back(reasons.substr(0, cut));
    if (cut == std::string_view::npos) break;
    reasons.remove_prefix(cut + 1);
  }
  return r;
}

std::string results_to_csv(std::span<const ClassificationResult> results) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : results) out += csv::join(result_fields(r)) + '\n';
  return out;
}

std::vector<ClassificationResult> results_from_csv(std::string_view text, const std::string& source) {
  std::vector<ClassificationResult> out;
  for (const auto& row : csv::parse(text, kResultsHeader, source)) {
    try {
      out.push_back(result_from_fields(row.fields, row.line));
    } catch (const ParseError& e) {
      throw ParseError(source + ": " + e.what());
    }
  }
  return out;
}

void save_results(const std::filesystem::path& path, std::span<const ClassificationResult> results) {
  write_atomic(path, results_to_csv(results));
}

std::vector<ClassificationResult> load_results(const std::filesystem::path& path) {
  return results_from_csv(read_text(path), path.string());
}

double Histogram::bin_start(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(counts.size());
}

double Histogram::bin_end(std::size_t i) const {
  return i + 1 == counts.size() ? hi : bin_start(i + 1);
}

Histogram histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw TooFewValues("histogram of an empty list");
  if (bins < 1) throw InvalidArgument("histogram needs at least one bin");
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument("histogram values must be finite");
  }
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  Histogram h{*mn, *mx, std::vector<std::size_t>(bins, 0)};
  const double width = h.hi - h.lo;
  for (double v : values) {
    std::size_t b = 0;
    if (width > 0) {
      b = static_cast<std::size_t>((v - h.lo) / width * static_cast<double>(bins));
      b = std::min(b, bins - 1);
    }
    ++h.counts[b];
  }
  return h;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += fmt::format("{},{},{}\n", csv::number(h.bin_start(i)), csv::number(h.bin_end(i)), h.counts[i]);
  }
  return out;
}

std::string histogram_text(const Histogram& h, std::size_t width) {
  std::size_t peak = *std::max_element(h.counts.begin(), h.counts.end());
  std::string out;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    std::size_t bar = peak ? h.counts[i] * width / peak : 0;
    out += fmt::format("[{:.6g}, {:.6g}{} {:>6} {}\n", h.bin_start(i), h.bin_end(i),
                       i + 1 == h.counts.size() ? "]" : ")", h.counts[i], std::string(bar, '#'));
  }
  return out;
}

}  // namespace rotortrack
