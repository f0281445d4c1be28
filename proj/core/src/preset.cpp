#include "tidehaz/preset.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tidehaz/error.hpp"

namespace tidehaz {

std::vector<std::filesystem::path> preset_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv(kPresetPathEnv)) {
    std::string_view rest(env);
    while (!rest.empty()) {
      auto pos = rest.find(':');
      auto item = rest.substr(0, pos);
      if (!item.empty()) dirs.emplace_back(std::string(item));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
  }
#ifdef TIDEHAZ_INSTALL_PRESET_DIR
  dirs.emplace_back(TIDEHAZ_INSTALL_PRESET_DIR);
#endif
#ifdef TIDEHAZ_SOURCE_PRESET_DIR
  dirs.emplace_back(TIDEHAZ_SOURCE_PRESET_DIR);
#endif
  return dirs;
}

SitePreset parse_preset_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SitePreset p;
    p.name = j.at("name").get<std::string>();
    const auto& d = j.at("datums");
    p.datums.xi_mllw = d.at("mllw").get<double>();
    p.datums.xi_mlw = d.at("mlw").get<double>();
    p.datums.xi_msl = d.at("msl").get<double>();
    p.datums.xi_mhw = d.at("mhw").get<double>();
    p.datums.xi_mhhw = d.at("mhhw").get<double>();
    p.datums.xi_lowest = d.at("lowest").get<double>();
    p.datums.xi_highest = d.at("highest").get<double>();
    p.datums.sigma0 = d.at("sigma0").get<double>();
    p.datums.validate();
    p.g_params.sigma0 = p.datums.sigma0;
    p.g_params.xi_ref = p.datums.xi_mllw;

    if (j.contains("g_method")) {
      const auto& g = j.at("g_method");
      auto& gp = p.g_params;
      gp.sigma0 = g.value("sigma0", gp.sigma0);
      gp.alpha = g.value("alpha", gp.alpha);
      gp.beta = g.value("beta", gp.beta);
      gp.C = g.value("C", gp.C);
      gp.alpha_prime = g.value("alpha_prime", gp.alpha_prime);
      gp.beta_prime = g.value("beta_prime", gp.beta_prime);
      gp.C_prime = g.value("C_prime", gp.C_prime);
      gp.xi_ref = g.value("xi_ref", gp.xi_ref);
      gp.subsidence = g.value("subsidence", gp.subsidence);
      gp.duration_minutes = g.value("duration_minutes", gp.duration_minutes);
      gp.period_minutes = g.value("period_minutes", gp.period_minutes);
      gp.efold_minutes = g.value("efold_minutes", gp.efold_minutes);
      gp.validate();
    }
    if (j.contains("exceedance_levels"))
      p.levels = ExceedanceLevels(j.at("exceedance_levels").get<std::vector<double>>());
    if (j.contains("recommended_dt")) {
      const auto& r = j.at("recommended_dt");
      p.recommended_dt_units = r.value("units", p.recommended_dt_units);
      p.recommended_dt = r.at("values").get<std::map<std::string, double>>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("preset JSON: {}", e.what()));
  }
}

SitePreset load_preset(const std::string& name_or_path) {
  std::filesystem::path direct(name_or_path);
  std::filesystem::path found;
  if (direct.extension() == ".json" && std::filesystem::is_regular_file(direct)) {
    found = direct;
  } else {
    for (const auto& dir : preset_search_path()) {
      auto candidate = dir / (name_or_path + ".json");
      if (std::filesystem::is_regular_file(candidate)) {
        found = candidate;
        break;
      }
    }
  }
  if (found.empty())
    throw Error(fmt::format("preset '{}' not found (set {} to add directories)", name_or_path,
                            kPresetPathEnv));
  std::ifstream in(found);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_preset_json(ss.str());
}

int recommended_dt_minutes(const SitePreset& preset, const std::string& source) {
  auto it = preset.recommended_dt.find(source);
  if (it == preset.recommended_dt.end())
    throw Error(fmt::format("preset {} has no recommended dt for source '{}'", preset.name, source));
  double scale = 1.0;
  if (preset.recommended_dt_units == "hours") scale = 60.0;
  else if (preset.recommended_dt_units != "minutes")
    throw Error(fmt::format("preset {}: unknown dt units '{}'", preset.name,
                            preset.recommended_dt_units));
  return static_cast<int>(std::lround(it->second * scale));
}

} // namespace tidehaz
