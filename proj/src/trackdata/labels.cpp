#include "rotortrack/trackdata/labels.hpp"

#include <sstream>

#include "rotortrack/csv.hpp"
#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"
#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

LabelMap load_labels(const std::filesystem::path& path) {
  LabelMap out;
  for (const auto& row : csv::read(path, kLabelsHeader)) {
    if (row.fields.size() != 2 || row.fields[0].empty()) {
      throw ParseError(path.string() + ": expected track_id,class", row.line);
    }
    if (!out.emplace(row.fields[0], row.fields[1]).second) {
      throw ParseError(path.string() + ": repeated track_id '" + row.fields[0] + "'", row.line);
    }
  }
  return out;
}

std::string labels_to_csv(const LabelMap& labels) {
  std::string out(kLabelsHeader);
  out += '\n';
  for (const auto& [id, cls] : labels) out += csv::join({id, cls}) + '\n';
  return out;
}

std::set<std::string> parse_type_list(std::string_view text) {
  std::set<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto key = normalize_key(line);
    if (key.empty() || key.front() == '#') continue;
    out.insert(key);
  }
  return out;
}

std::set<std::string> load_type_list(const std::filesystem::path& path) {
  return parse_type_list(read_text(path));
}

std::string type_list_text(const std::set<std::string>& types) {
  std::string out;
  for (const auto& t : types) out += t + '\n';
  return out;
}

}  // namespace rotortrack
