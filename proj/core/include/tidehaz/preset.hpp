#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tidehaz/g_params.hpp"
#include "tidehaz/hazard.hpp"
#include "tidehaz/tide_record.hpp"

namespace tidehaz {

/// Site constants shipped as JSON data files.
struct SitePreset {
  std::string name;
  TidalDatums datums;
  GMethodParams g_params;
  ExceedanceLevels levels = ExceedanceLevels::standard();
  /// Recommended contiguous windows per named source, as published.
  std::map<std::string, double> recommended_dt;
  /// Units assumed for recommended_dt (the published table omits them).
  std::string recommended_dt_units = "hours";
};

/// Environment variable holding extra preset directories (':'-separated),
/// searched before the built-in locations.
inline constexpr const char* kPresetPathEnv = "TIDEHAZ_PRESET_PATH";

/// Directories searched for "<name>.json", in order.
std::vector<std::filesystem::path> preset_search_path();

/// Loads a preset by name (searching preset_search_path()) or, when
/// name_or_path names an existing .json file, from that file.
SitePreset load_preset(const std::string& name_or_path);

SitePreset parse_preset_json(const std::string& text);

/// Recommended window in minutes for a named source, converting from the
/// preset's units. Throws Error for unknown sources.
int recommended_dt_minutes(const SitePreset& preset, const std::string& source);

} // namespace tidehaz
