#include "rotortrack/trackdata/registration.hpp"

#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"

namespace rotortrack {

std::string RegistrationTable::insert(RegistrationRecord record) {
  record.n_number = normalize_key(record.n_number);
  if (record.mode_s_code) record.mode_s_code = normalize_key(*record.mode_s_code);
  if (record.n_number.empty()) throw InvalidArgument("registration: empty n_number");
  if (by_tail_.contains(record.n_number)) return "n_number " + record.n_number;
  if (record.mode_s_code && by_mode_s_.contains(*record.mode_s_code)) {
    return "mode_s_code " + *record.mode_s_code;
  }
  const std::size_t index = records_.size();
  by_tail_.emplace(record.n_number, index);
  if (record.mode_s_code) by_mode_s_.emplace(*record.mode_s_code, index);
  records_.push_back(std::move(record));
  return {};
}

const RegistrationRecord* RegistrationTable::by_n_number(std::string_view n_number) const {
  auto it = by_tail_.find(normalize_key(n_number));
  return it == by_tail_.end() ? nullptr : &records_[it->second];
}

const RegistrationRecord* RegistrationTable::by_mode_s(std::string_view mode_s) const {
  auto it = by_mode_s_.find(normalize_key(mode_s));
  return it == by_mode_s_.end() ? nullptr : &records_[it->second];
}

RegistrationLoad load_registration(const std::filesystem::path& path, OnBadRecord on_bad) {
  RegistrationLoad out;
  auto optional_field = [](const std::string& s) -> std::optional<std::string> {
    if (normalize_key(s).empty()) return std::nullopt;
    return s;
  };
  for (const auto& row : csv::read(path, kRegistrationHeader)) {
    std::string problem;
    std::optional<AircraftClass> cls;
    if (row.fields.size() != 6) {
      problem = "expected 6 fields, got " + std::to_string(row.fields.size());
    } else if (normalize_key(row.fields[0]).empty()) {
      problem = "empty n_number";
    } else if (!(cls = parse_aircraft_class(row.fields[4]))) {
      problem = "unknown aircraft_class '" + row.fields[4] + "'";
    }
    if (!problem.empty()) {
      if (on_bad == OnBadRecord::abort) throw ParseError(path.string() + ": " + problem, row.line);
      out.malformed.push_back({row.line, problem});
      continue;
    }
    RegistrationRecord rec{row.fields[0], optional_field(row.fields[1]), row.fields[2], row.fields[3],
                           *cls, optional_field(row.fields[5])};
    if (auto clash = out.table.insert(std::move(rec)); !clash.empty()) {
      out.duplicates.push_back({row.line, "duplicate " + clash});
    }
  }
  return out;
}

void save_registration(const std::filesystem::path& path, std::span<const RegistrationRecord> rows) {
  std::string text(kRegistrationHeader);
  text += '\n';
  for (const auto& r : rows) {
    text += csv::join({r.n_number, r.mode_s_code.value_or(""), r.model, r.manufacturer,
                       std::string(to_string(r.aircraft_class)), r.type_designator.value_or("")});
    text += '\n';
  }
  write_atomic(path, text);
}

}  // namespace rotortrack
