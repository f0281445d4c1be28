#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tidehaz {

/// Seconds since 1970-01-01T00:00:00Z.
using EpochSeconds = std::int64_t;

/// Length of the lunar (tidal) day used to partition records for datums.
inline constexpr std::size_t kTidalDayMinutes = 1490;

/// Half-width of the window a sample must dominate to count as a high/low.
inline constexpr std::size_t kExtremumRadiusMinutes = 120;

/// Parses "YYYY-MM-DDTHH:MM[:SS]" with an optional trailing "Z" (a space is
/// accepted in place of "T"). Throws Error on malformed input.
EpochSeconds parse_iso8601_utc(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(EpochSeconds t);

/// Sea level at one-minute cadence, in meters relative to MSL.
///
/// Immutable once built. The constructor checks only structural validity
/// (non-empty, finite levels); the minimum-length policy belongs to
/// ingestion, see IngestOptions.
class TideRecord {
public:
  TideRecord(EpochSeconds start_epoch, std::vector<double> levels,
             std::string site_label = {}, std::string source_kind = "unknown");

  EpochSeconds start_epoch() const noexcept { return start_epoch_; }
  int cadence_minutes() const noexcept { return 1; }
  std::span<const double> levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const std::string& site_label() const noexcept { return site_label_; }
  /// "observed", "predicted", "synthetic" or "unknown"; carried into
  /// manifests since either tide product is accepted.
  const std::string& source_kind() const noexcept { return source_kind_; }

  double mean() const noexcept;
  double min() const noexcept;
  double max() const noexcept;

private:
  EpochSeconds start_epoch_;
  std::vector<double> levels_;
  std::string site_label_;
  std::string source_kind_;
};

struct GapPolicy {
  /// Gaps (time between consecutive rows) up to this many minutes are
  /// filled by linear interpolation. Ignored when fail_on_any_gap is set.
  int interpolate_max_minutes = 120;
  bool fail_on_any_gap = false;

  static GapPolicy fail() { return {0, true}; }
  static GapPolicy interpolate(int max_minutes) { return {max_minutes, false}; }
};

struct IngestOptions {
  GapPolicy gap_policy{};
  /// Minimum accepted record length in samples (default: 40 tidal days).
  std::size_t min_samples = 40 * kTidalDayMinutes;
  /// Subtract the record mean so the result is referenced to its own MSL.
  bool rebase_to_mean = false;
  std::string site_label{};
  std::string source_kind = "unknown";
};

/// Reads a `timestamp,level_m` CSV into a uniform one-minute record.
/// Lines starting with '#' are skipped.
TideRecord ingest_tide_csv(std::istream& in, const IngestOptions& options = {});

/// Writes the record as `timestamp,level_m`. Levels use the shortest
/// round-trip decimal form so that re-ingesting reproduces them exactly.
void write_tide_csv(std::ostream& out, const TideRecord& record);

/// Non-empty when the record mean is more than 0.05 m away from zero.
std::optional<std::string> msl_reference_warning(const TideRecord& record);

struct HarmonicConstituent {
  std::string name;
  double amplitude_m = 0.0;
  double speed_deg_per_hr = 0.0;
  double phase_deg = 0.0;
};

/// Reads `name,amplitude_m,speed_deg_per_hr,phase_deg`.
std::vector<HarmonicConstituent> read_constituents_csv(std::istream& in);

/// level[m] = msl_offset + sum_i A_i cos(speed_i * t_m + phase_i), with t_m
/// in hours and angles in degrees, for m in [0, round(duration_days * 1440)).
TideRecord synthesize_tide(std::span<const HarmonicConstituent> constituents,
                           double duration_days, double msl_offset_m = 0.0,
                           EpochSeconds start_epoch = 946684800);

/// Reference levels of a site, meters relative to MSL.
struct TidalDatums {
  double xi_mllw = 0.0;
  double xi_mlw = 0.0;
  double xi_msl = 0.0;
  double xi_mhw = 0.0;
  double xi_mhhw = 0.0;
  double xi_lowest = 0.0;
  double xi_highest = 0.0;
  double sigma0 = 0.0;

  /// Throws Error unless lowest <= mllw <= mlw <= msl <= mhw <= mhhw <=
  /// highest and sigma0 > 0.
  void validate() const;
};

/// Tidal-day datums from a record.
///
/// The record is cut into consecutive 1490-minute tidal days (a trailing
/// partial day is dropped). A sample is a high when it is strictly greater
/// than the 120 samples before it and not less than the 120 samples after
/// it, so on a flat crest the earliest sample wins; lows mirror this.
/// Samples whose +-120 minute neighbourhood leaves the record are not
/// considered. MHHW/MLLW average the per-day higher high / lower low,
/// MHW/MLW average every detected high / low, MSL is the record mean,
/// lowest/highest are the global extremes and sigma0 is the population
/// standard deviation.
TidalDatums compute_datums(const TideRecord& record);

/// `datum,value_m` rows for mllw, mlw, msl, mhw, mhhw, lowest, highest,
/// sigma0 with fixed six-decimal values.
void write_datum_csv(std::ostream& out, const TidalDatums& datums);

} // namespace tidehaz
