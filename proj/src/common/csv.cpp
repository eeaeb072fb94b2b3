#include "rotortrack/csv.hpp"

#include <fmt/format.h>

#include <sstream>

#include "rotortrack/error.hpp"
#include "rotortrack/fileio.hpp"

namespace rotortrack::csv {

std::vector<std::string> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  if (line.empty()) return out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (c == '"') {
      if (was_quoted || !field.empty()) throw ParseError("stray quote in field");
      quoted = was_quoted = true;
    } else {
      if (was_quoted) throw ParseError("text after closing quote");
      field += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape(fields[i]);
  }
  return out;
}

std::string number(double value) { return fmt::format("{}", value); }

std::vector<Row> parse(std::string_view text, std::string_view header, const std::string& source) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source + ": missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) {
    throw ParseError(source + ": expected header '" + std::string(header) + "'", 1);
  }
  std::vector<Row> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    if (line.back() == '\r') line.pop_back();
    try {
      rows.push_back({number, split(line)});
    } catch (const ParseError& e) {
      throw ParseError(source + ": " + e.what(), number);
    }
  }
  return rows;
}

std::vector<Row> read(const std::filesystem::path& path, std::string_view header) {
  return parse(read_text(path), header, path.string());
}

}  // namespace rotortrack::csv
