#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tidehaz/g_params.hpp"

namespace tidehaz {

/// Sea-surface elevation at a computational gauge, relative to the static
/// level of the run that produced it.
struct GaugeSeries {
  std::vector<double> minutes_since_event;
  std::vector<double> eta_m;
  double run_stage_m = 0.0;

  /// Throws Error unless times are strictly ascending, sizes match and all
  /// values are finite.
  void validate() const;
};

/// Closed interval of whole minutes, relative to the start of the first wave.
struct WaveInterval {
  int start = 0;
  int end = 0;

  int width() const noexcept { return end - start; }
  friend bool operator==(const WaveInterval&, const WaveInterval&) = default;
};

/// A tsunami as K square waves: interval I_k and height deficit D_k to the
/// tallest wave.
class WavePattern {
public:
  /// Throws Error unless S_1 = 0, S_k <= T_k, T_k <= S_{k+1}, all D_k >= 0
  /// and min D_k = 0.
  WavePattern(std::vector<WaveInterval> intervals, std::vector<double> offsets,
              std::string source = {});

  const std::vector<WaveInterval>& intervals() const noexcept { return intervals_; }
  const std::vector<double>& offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return intervals_.size(); }
  /// T_K in minutes.
  int duration() const noexcept { return intervals_.back().end; }
  double max_offset() const noexcept;
  const std::string& source() const noexcept { return source_; }

  friend bool operator==(const WavePattern&, const WavePattern&) = default;

private:
  std::vector<WaveInterval> intervals_;
  std::vector<double> offsets_;
  std::string source_;
};

/// Seven-wave AASZe02 pattern observed at the Crescent City harbor gauge.
WavePattern aasze02_pattern();

struct ExtractParams {
  /// Candidate waves are runs where eta > threshold_fraction * max(eta).
  double threshold_fraction = 0.25;
  /// Runs separated by less than this many minutes are one wave. Must stay
  /// below the gap between neighbouring crests of the shortest-period
  /// signal of interest (about 12 minutes for the 20-minute proxy).
  double min_gap_minutes = 5.0;
  enum class WidthRule { half_amplitude, threshold_run };
  /// half_amplitude: samples of the run at or above half its own crest;
  /// threshold_run: the whole run above the threshold.
  WidthRule width_rule = WidthRule::half_amplitude;
};

/// Square-wave pattern of the positive crests of a gauge series. Drawdowns
/// are ignored. Interval ends round outward to whole minutes and are rebased
/// so the first wave starts at 0.
WavePattern extract_pattern(const GaugeSeries& gauge, const ExtractParams& params = {});

/// Minute-sampled proxy tsunami eta(t) = A_G exp(-t/efold) cos(2 pi t/period)
/// for t = 0..T_G.
GaugeSeries proxy_pattern(double amplitude_m, const GMethodParams& gp = {});

/// Contiguous window covering the tallest wave and every wave whose height is
/// within near_equal_margin of it, in minutes.
int recommend_dt(const WavePattern& pattern, double near_equal_margin);

/// Gauge CSV: optional "# run_stage_m=<value>" line, header `t_min,eta_m`.
GaugeSeries read_gauge_csv(std::istream& in);

/// JSON {source, intervals: [[S,T],...], offsets: [...], duration}.
void write_pattern_json(std::ostream& out, const WavePattern& pattern);
WavePattern read_pattern_json(std::istream& in);

} // namespace tidehaz
