#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tidehaz/ccdf.hpp"
#include "tidehaz/parallel.hpp"
#include "tidehaz/stage_response.hpp"

namespace tidehaz {

/// Exceedance values zeta_i, meters. Strictly ascending and nonnegative.
class ExceedanceLevels {
public:
  explicit ExceedanceLevels(std::vector<double> levels);

  /// 0.0-2.0 step 0.1, 2.5-5.5 step 0.5, 6-12 step 1 (35 values).
  static ExceedanceLevels standard();

  const std::vector<double>& values() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }

  friend bool operator==(const ExceedanceLevels&, const ExceedanceLevels&) = default;

private:
  std::vector<double> levels_;
};

enum class PsiMode {
  infimum,      ///< Phi(Z^-1(zeta))
  interval_sum, ///< sum over exceedance intervals of Phi(a) - Phi(b)
};

struct HazardCurve {
  Location location;
  ExceedanceLevels levels = ExceedanceLevels::standard();
  std::vector<double> probabilities;
  std::string method_tag;
};

/// Hazard curves for a set of locations sharing one set of levels.
struct GridField {
  std::vector<Location> locations;
  ExceedanceLevels levels = ExceedanceLevels::standard();
  /// probabilities[location][level]
  std::vector<std::vector<double>> probabilities;
  std::string method_tag;
};

struct DiffSummary {
  double max_diff = 0.0;
  double min_diff = 0.0;
  /// a - b, same shape as the compared fields.
  GridField diff;

  /// |a - b| per location and level, for contouring.
  GridField abs_field() const;
};

/// P[zeta > zeta_i] = Phi(Z^-1(zeta_i)) per level, or the interval sum for
/// non-monotone responses. Phi(-inf) = 1 and Phi(+inf) = 0; an interval
/// reaching the top of the stage domain contributes Phi(a) - 0.
HazardCurve psi(const StageResponse& sr, const CcdfTable& phi,
                const ExceedanceLevels& levels, PsiMode mode = PsiMode::infimum);

/// psi at every location, evaluated concurrently, in input order.
GridField hazard_grid(const std::vector<StageResponse>& responses, const CcdfTable& phi,
                      const ExceedanceLevels& levels, PsiMode mode = PsiMode::infimum,
                      Exec exec = {});

/// G method in closed form at one location: the run at MHHW fixes A_G and
/// P[zeta > zeta_i] = 0.5 * (1 - erf((zeta_i - zeta0) / (sqrt(2) sigma))).
/// Nonpositive A_G (dry or barely wet points) uses the A_G -> 0+ limit of
/// the regression.
HazardCurve g_method_curve(const Location& location, double qoi_at_mhhw,
                           const ExceedanceLevels& levels, const GMethodParams& gp,
                           const TidalDatums& datums);

/// Element-wise a - b with global extremes. Throws Error when locations or
/// levels differ.
DiffSummary compare_fields(const GridField& a, const GridField& b);

/// Brute-force Phi_Pattern: for every start minute, every wave and every
/// minute of the wave, with exceedances counted directly against each bin
/// edge. Independent of the sliding-window path; limited to records of at
/// most 10^4 minutes.
CcdfTable oracle_phi(const TideRecord& record, const WavePattern& pattern, const BinSpec& bins);

inline constexpr std::size_t kOracleMaxMinutes = 10000;

/// Z-table CSV `lon,lat,bathy_m,stage:<s1>,...`; each row becomes a
/// response built with `config` (slope_one uses the column at
/// anchor_stage).
struct ZTable {
  std::vector<double> stages;
  std::vector<Location> locations;
  std::vector<std::vector<double>> qoi; ///< qoi[location][stage]
};
ZTable read_ztable_csv(std::istream& in);
std::vector<StageResponse> responses_from_ztable(const ZTable& table, const ResponseConfig& config,
                                                 double anchor_stage = 0.0);

/// Hazard CSV `lon,lat,bathy_m,p_gt_<zeta_1>,...` with six-decimal values.
void write_hazard_csv(std::ostream& out, const GridField& field);
GridField read_hazard_csv(std::istream& in);

/// Diff CSV: `lon,lat,bathy_m,d_<zeta_1>,...` plus a
/// "# max_diff=..., min_diff=..." footer. With absolute = true the cells
/// hold |a - b| (the footer still reports the signed extremes).
void write_diff_csv(std::ostream& out, const DiffSummary& summary, bool absolute = false);

/// Column label for a level: shortest decimal form ("0", "0.1", "12").
std::string level_label(double level);

} // namespace tidehaz
