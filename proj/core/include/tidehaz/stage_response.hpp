#pragma once

#include <optional>
#include <vector>

namespace tidehaz {

struct Location {
  double lon = 0.0;
  double lat = 0.0;
  double bathy_m = 0.0;

  friend bool operator==(const Location&, const Location&) = default;
};

/// One simulation: static run level -> simulated QoI.
struct StageSample {
  double stage = 0.0;
  double qoi = 0.0;
};

enum class ResponseMode {
  piecewise_linear, ///< interpolate between simulated stages
  slope_one,        ///< single run; Z(s) = Z(anchor) + (s - anchor)
};

enum class Extrapolation {
  clamp,               ///< hold the end values
  linear_continuation, ///< extend the end segments
};

/// Stages over which Z is inverted; normally [xi_lowest, xi_highest].
struct StageDomain {
  double lo = 0.0;
  double hi = 0.0;
};

struct ResponseConfig {
  ResponseMode mode = ResponseMode::piecewise_linear;
  Extrapolation extrapolation = Extrapolation::linear_continuation;
  StageDomain domain{};
  /// Extrapolated values never drop below this (wet/dry floor for depth
  /// QoIs). Ignored in slope_one mode and inside the knot span.
  std::optional<double> qoi_floor = 0.0;
};

/// Open stage intervals (a_j, b_j) on which Z exceeds a level. An interval
/// that reaches the bottom of the domain starts at -infinity; one reaching
/// the top ends at domain.hi.
struct ExceedanceSet {
  struct Interval {
    double a;
    double b;
  };
  std::vector<Interval> intervals;

  double total_length(const StageDomain& domain) const noexcept;
};

/// Stage-to-QoI function Z at one location. Immutable.
class StageResponse {
public:
  const Location& location() const noexcept { return location_; }
  const std::vector<StageSample>& samples() const noexcept { return samples_; }
  const ResponseConfig& config() const noexcept { return config_; }
  const StageDomain& domain() const noexcept { return config_.domain; }

  double eval(double stage) const noexcept;

  /// (stage, Z) vertices over the domain; Z is linear between neighbours.
  const std::vector<StageSample>& vertices() const noexcept { return vertices_; }

private:
  friend StageResponse build_response(Location, std::vector<StageSample>, const ResponseConfig&);
  StageResponse() = default;

  Location location_{};
  std::vector<StageSample> samples_;
  ResponseConfig config_{};
  std::vector<StageSample> vertices_;
};

/// Sorts samples by stage. Throws Error on empty input, duplicate or
/// non-finite stages, a slope_one response with more than one sample, a
/// piecewise response with fewer than two, or an empty domain.
StageResponse build_response(Location location, std::vector<StageSample> samples,
                             const ResponseConfig& config);

double eval_Z(const StageResponse& sr, double stage) noexcept;

/// inf{s in domain : Z(s) > qoi_level}. Returns -infinity when Z already
/// exceeds the level at the bottom of the domain and +infinity when it
/// never does.
double inverse_Z(const StageResponse& sr, double qoi_level) noexcept;

/// {s in domain : Z(s) > qoi_level} as disjoint ascending open intervals,
/// solved segment by segment on the piecewise-linear form.
ExceedanceSet exceedance_intervals(const StageResponse& sr, double qoi_level);

} // namespace tidehaz
