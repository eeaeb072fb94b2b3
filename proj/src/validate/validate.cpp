#include "rotortrack/validate/validate.hpp"

#include <unordered_map>

#include <fmt/format.h>

#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"

namespace rotortrack {

bool rule_based_baseline(const Track& track, const std::set<std::string>& helicopter_types,
                         const std::set<std::string>& pseudo_types) {
  if (!track.declared_type) return false;
  auto key = normalize_key(*track.declared_type);
  return !key.empty() && (helicopter_types.contains(key) || pseudo_types.contains(key));
}

std::string_view to_string(MatchKind m) {
  switch (m) {
    case MatchKind::by_tail: return "BY_TAIL";
    case MatchKind::by_mode_s: return "BY_MODE_S";
    case MatchKind::unmatched: return "UNMATCHED";
  }
  return "UNMATCHED";
}

MatchKind parse_match_kind(std::string_view text) {
  if (text == "BY_TAIL") return MatchKind::by_tail;
  if (text == "BY_MODE_S") return MatchKind::by_mode_s;
  if (text == "UNMATCHED") return MatchKind::unmatched;
  throw ParseError("unknown match kind '" + std::string(text) + "'");
}

std::vector<ValidationRecord> join_registration(std::span<const ClassificationResult> results,
                                                std::span<const Track> tracks, const RegistrationTable& table,
                                                const std::set<std::string>& helicopter_types,
                                                const std::set<std::string>& pseudo_types) {
  std::unordered_map<std::string_view, const Track*> by_id;
  for (const auto& t : tracks) by_id.emplace(t.track_id, &t);

  std::vector<ValidationRecord> out;
  out.reserve(results.size());
  for (const auto& r : results) {
    ValidationRecord v;
    v.prediction = r;
    auto it = by_id.find(r.track_id);
    if (it != by_id.end()) {
      const Track& track = *it->second;
      v.declared_type = track.declared_type;
      v.baseline_is_helicopter = rule_based_baseline(track, helicopter_types, pseudo_types);
      const RegistrationRecord* tail = track.tail_number ? table.by_n_number(*track.tail_number) : nullptr;
      const RegistrationRecord* modes = track.mode_s ? table.by_mode_s(*track.mode_s) : nullptr;
      const RegistrationRecord* reg = tail ? tail : modes;
      if (reg) {
        v.matched = tail ? MatchKind::by_tail : MatchKind::by_mode_s;
        v.n_number = reg->n_number;
        v.aircraft_class = reg->aircraft_class;
        v.is_helicopter_ac_reg = reg->aircraft_class == AircraftClass::rotorcraft;
        v.model = reg->model;
        v.manufacturer = reg->manufacturer;
        v.type_designator = reg->type_designator;
        v.conflict = tail && modes && tail->aircraft_class != modes->aircraft_class;
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::string opt(const std::optional<std::string>& s) { return s.value_or(""); }
std::optional<std::string> opt_in(const std::string& s) {
  return s.empty() ? std::nullopt : std::optional<std::string>(s);
}
std::string flag(bool b) { return b ? "true" : "false"; }

bool parse_flag(const std::string& s, std::size_t line) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ParseError("expected true or false, got '" + s + "'", line);
}

}  // namespace

std::string validation_to_csv(std::span<const ValidationRecord> records) {
  std::string out(kValidationHeader);
  out += '\n';
  for (const auto& v : records) {
    auto fields = result_fields(v.prediction);
    for (auto& extra : {flag(v.baseline_is_helicopter), opt(v.declared_type), std::string(to_string(v.matched)),
                        opt(v.n_number), v.aircraft_class ? std::string(to_string(*v.aircraft_class)) : "",
                        v.is_helicopter_ac_reg ? flag(*v.is_helicopter_ac_reg) : "", opt(v.model),
                        opt(v.manufacturer), opt(v.type_designator), flag(v.conflict)}) {
      fields.push_back(extra);
    }
    out += csv::join(fields) + '\n';
  }
  return out;
}

std::vector<ValidationRecord> validation_from_csv(std::string_view text, const std::string& source) {
  std::vector<ValidationRecord> out;
  for (const auto& row : csv::parse(text, kValidationHeader, source)) {
    const auto& f = row.fields;
    if (f.size() != 15) throw ParseError(source + ": expected 15 fields", row.line);
    ValidationRecord v;
    v.prediction = result_from_fields(std::span(f).first(5), row.line);
    v.baseline_is_helicopter = parse_flag(f[5], row.line);
    v.declared_type = opt_in(f[6]);
    v.matched = parse_match_kind(f[7]);
    v.n_number = opt_in(f[8]);
    if (!f[9].empty()) {
      v.aircraft_class = parse_aircraft_class(f[9]);
      if (!v.aircraft_class) throw ParseError(source + ": unknown aircraft class", row.line);
    }
    if (!f[10].empty()) v.is_helicopter_ac_reg = parse_flag(f[10], row.line);
    v.model = opt_in(f[11]);
    v.manufacturer = opt_in(f[12]);
    v.type_designator = opt_in(f[13]);
    v.conflict = parse_flag(f[14], row.line);
    if (v.is_helicopter_ac_reg.has_value() != (v.matched != MatchKind::unmatched)) {
      throw ParseError(source + ": is_helicopter_ac_reg must be set exactly for matched rows", row.line);
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

void count(ConfusionMetrics& m, bool predicted, bool truth) {
  if (predicted && truth) ++m.true_positive;
  if (predicted && !truth) ++m.false_positive;
  if (!predicted && truth) ++m.false_negative;
  if (!predicted && !truth) ++m.true_negative;
}

void finish(ConfusionMetrics& m) {
  auto tp = static_cast<double>(m.true_positive);
  if (m.true_positive + m.false_positive > 0) {
    m.precision = tp / static_cast<double>(m.true_positive + m.false_positive);
  }
  if (m.true_positive + m.false_negative > 0) {
    m.recall = tp / static_cast<double>(m.true_positive + m.false_negative);
  }
}

template <class Predicted>
ConfusionMetrics against_labels(std::span<const ValidationRecord> records, const LabelMap& labels,
                                Predicted predicted) {
  ConfusionMetrics m;
  for (const auto& v : records) {
    auto it = labels.find(v.prediction.track_id);
    if (it == labels.end()) {
      ++m.without_truth;
      continue;
    }
    count(m, predicted(v), it->second == kHelicopterClass);
  }
  finish(m);
  return m;
}

}  // namespace

ConfusionMetrics confusion_metrics(std::span<const ValidationRecord> records) {
  ConfusionMetrics m;
  for (const auto& v : records) {
    if (!v.is_helicopter_ac_reg) {
      ++m.without_truth;
      continue;
    }
    count(m, v.prediction.pred_is_helicopter, *v.is_helicopter_ac_reg);
  }
  finish(m);
  return m;
}

ConfusionMetrics confusion_metrics(std::span<const ValidationRecord> records, const LabelMap& labels) {
  return against_labels(records, labels, [](const ValidationRecord& v) { return v.prediction.pred_is_helicopter; });
}

ConfusionMetrics baseline_metrics(std::span<const ValidationRecord> records, const LabelMap& labels) {
  return against_labels(records, labels, [](const ValidationRecord& v) { return v.baseline_is_helicopter; });
}

std::string metrics_csv(const ConfusionMetrics& m, std::string_view prefix) {
  auto ratio = [](const std::optional<double>& r) { return r ? csv::number(*r) : std::string("N/A"); };
  std::string out;
  out += fmt::format("{}true_positive,{}\n", prefix, m.true_positive);
  out += fmt::format("{}false_positive,{}\n", prefix, m.false_positive);
  out += fmt::format("{}false_negative,{}\n", prefix, m.false_negative);
  out += fmt::format("{}true_negative,{}\n", prefix, m.true_negative);
  out += fmt::format("{}without_truth,{}\n", prefix, m.without_truth);
  out += fmt::format("{}precision,{}\n", prefix, ratio(m.precision));
  out += fmt::format("{}recall,{}\n", prefix, ratio(m.recall));
  return out;
}

VennCounts venn_compare(const std::set<std::string>& autoencoder, const std::set<std::string>& baseline) {
  VennCounts v;
  for (const auto& id : autoencoder) {
    if (baseline.contains(id)) {
      ++v.both;
    } else {
      ++v.autoencoder_only;
    }
  }
  v.baseline_only = baseline.size() - v.both;
  return v;
}

VennCounts venn_compare(std::span<const ValidationRecord> records) {
  std::set<std::string> a, b;
  for (const auto& v : records) {
    if (v.prediction.pred_is_helicopter) a.insert(v.prediction.track_id);
    if (v.baseline_is_helicopter) b.insert(v.prediction.track_id);
  }
  return venn_compare(a, b);
}

std::string venn_csv(const VennCounts& v) {
  return fmt::format("both,autoencoder_only,baseline_only\n{},{},{}\n", v.both, v.autoencoder_only,
                     v.baseline_only);
}

std::string venn_text(const VennCounts& v) {
  return fmt::format(
      "Helicopters found\n"
      "  autoencoder only : {}\n"
      "  both             : {}\n"
      "  baseline only    : {}\n"
      "  autoencoder total: {}\n"
      "  baseline total   : {}\n",
      v.autoencoder_only, v.both, v.baseline_only, v.autoencoder_only + v.both, v.baseline_only + v.both);
}

std::vector<PseudoTypeRow> resolve_pseudo_types(std::span<const ValidationRecord> records,
                                                const std::set<std::string>& pseudo_types) {
  std::vector<PseudoTypeRow> out;
  for (const auto& v : records) {
    if (v.matched == MatchKind::unmatched || !v.model || v.model->empty()) continue;
    std::string declared = v.declared_type ? normalize_key(*v.declared_type) : "";
    if (!declared.empty() && !pseudo_types.contains(declared)) continue;
    out.push_back({v.prediction.track_id, v.declared_type.value_or(""), *v.model, v.manufacturer.value_or(""),
                   v.type_designator.value_or("")});
  }
  return out;
}

std::string pseudo_types_csv(std::span<const PseudoTypeRow> rows) {
  std::string out(kPseudoTypesHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += csv::join({r.track_id, r.declared_type, r.model, r.manufacturer, r.type_designator}) + '\n';
  }
  return out;
}

}  // namespace rotortrack
