#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "rotortrack/autoencoder/model.hpp"

namespace rotortrack {

inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Binary model container:
///   "RTAE" | u32 version | u8 bytes per value | u64 n + spec JSON
///   | norm mean, norm std | u32 stage count | per stage: weights, bias
///   | u32 CRC-32 of everything before it
/// Arrays are a u64 count followed by little-endian values. Integers are
/// little-endian.
std::string serialize_model(const Autoencoder& model);

/// Throws ParseError for a bad magic string, VersionError for an unknown
/// version, ChecksumError for truncated or altered content.
Autoencoder deserialize_model(std::string_view bytes);

void save_model(const Autoencoder& model, const std::filesystem::path& path);
Autoencoder load_model(const std::filesystem::path& path);

}  // namespace rotortrack
