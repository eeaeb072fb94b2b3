#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rotortrack::csv {

/// Split one CSV record; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split(std::string_view line);

/// Quote a field only when it needs it.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

/// Shortest decimal text that parses back to the same double.
std::string number(double value);

struct Row {
  std::size_t line;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

/// Parse CSV text whose first line must equal `header`; `source` names it in errors.
std::vector<Row> parse(std::string_view text, std::string_view header, const std::string& source = "csv");

/// Read a whole CSV file whose first line must equal `header`. Blank lines are skipped.
/// Throws IoError / ParseError.
std::vector<Row> read(const std::filesystem::path& path, std::string_view header);

}  // namespace rotortrack::csv
