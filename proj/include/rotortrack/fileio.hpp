#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace rotortrack {

/// Whole file as text; throws IoError naming the path.
std::string read_text(const std::filesystem::path& path);
std::vector<char> read_bytes(const std::filesystem::path& path);

/// Write to "<path>.tmp" and rename over `path` once the write succeeded.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace rotortrack
