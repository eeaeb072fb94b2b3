#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rotortrack/trackdata/io.hpp"
#include "rotortrack/trackdata/types.hpp"

namespace rotortrack {

inline constexpr std::string_view kRegistrationHeader =
    "n_number,mode_s_code,model,manufacturer,aircraft_class,type_designator";

/// Registration snapshot indexed by tail number and by Mode-S code.
///
/// A record whose tail number or Mode-S code is already present is not
/// inserted (first occurrence wins) and is reported as a duplicate, so both
/// indexes always resolve a kept row to the same record.
class RegistrationTable {
 public:
  /// Returns the key collision when the record is rejected, empty otherwise.
  std::string insert(RegistrationRecord record);

  const RegistrationRecord* by_n_number(std::string_view n_number) const;
  const RegistrationRecord* by_mode_s(std::string_view mode_s) const;

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::span<const RegistrationRecord> records() const noexcept { return records_; }

 private:
  std::vector<RegistrationRecord> records_;
  std::unordered_map<std::string, std::size_t> by_tail_;
  std::unordered_map<std::string, std::size_t> by_mode_s_;
};

struct RegistrationLoad {
  RegistrationTable table;
  std::vector<Reject> malformed;
  std::vector<Reject> duplicates;
};

RegistrationLoad load_registration(const std::filesystem::path& path,
                                   OnBadRecord on_bad = OnBadRecord::skip);
void save_registration(const std::filesystem::path& path, std::span<const RegistrationRecord> rows);

}  // namespace rotortrack
