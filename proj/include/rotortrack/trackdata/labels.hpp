#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace rotortrack {

/// Ground-truth sidecar: track_id,class. Kept out of the track records.
inline constexpr std::string_view kLabelsHeader = "track_id,class";
inline constexpr std::string_view kHelicopterClass = "helicopter";
inline constexpr std::string_view kGeneralAviationClass = "general_aviation";
inline constexpr std::string_view kCommercialClass = "commercial";

using LabelMap = std::map<std::string, std::string>;

/// Throws ParseError on a malformed row or a repeated track_id.
LabelMap load_labels(const std::filesystem::path& path);
std::string labels_to_csv(const LabelMap& labels);

/// One entry per line, normalized with normalize_key; blank lines and
/// lines starting with '#' are ignored.
std::set<std::string> parse_type_list(std::string_view text);
std::set<std::string> load_type_list(const std::filesystem::path& path);
std::string type_list_text(const std::set<std::string>& types);

}  // namespace rotortrack
