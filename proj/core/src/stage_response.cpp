#include "tidehaz/stage_response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tidehaz/error.hpp"

namespace tidehaz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lerp_at(const StageSample& a, const StageSample& b, double s) noexcept {
  return a.qoi + (b.qoi - a.qoi) * (s - a.stage) / (b.stage - a.stage);
}

// Stage where the segment a-b reaches `level`; a.qoi != b.qoi.
double crossing(const StageSample& a, const StageSample& b, double level) noexcept {
  return a.stage + (level - a.qoi) * (b.stage - a.stage) / (b.qoi - a.qoi);
}

} // namespace

double ExceedanceSet::total_length(const StageDomain& domain) const noexcept {
  double sum = 0.0;
  for (const auto& iv : intervals) sum += iv.b - std::max(iv.a, domain.lo);
  return sum;
}

double StageResponse::eval(double s) const noexcept {
  if (config_.mode == ResponseMode::slope_one) {
    const auto& anchor = samples_.front();
    return anchor.qoi + (s - anchor.stage);
  }
  const auto& first = samples_.front();
  const auto& last = samples_.back();
  double z;
  if (s < first.stage) {
    z = config_.extrapolation == Extrapolation::clamp ? first.qoi
                                                      : lerp_at(samples_[0], samples_[1], s);
  } else if (s > last.stage) {
    const auto n = samples_.size();
    z = config_.extrapolation == Extrapolation::clamp
            ? last.qoi
            : lerp_at(samples_[n - 2], samples_[n - 1], s);
  } else {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), s,
                               [](double v, const StageSample& k) { return v < k.stage; });
    if (it == samples_.end()) return last.qoi;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (s == lo.stage) return lo.qoi;
    return lerp_at(lo, hi, s);
  }
  if (config_.qoi_floor) z = std::max(z, *config_.qoi_floor);
  return z;
}

StageResponse build_response(Location location, std::vector<StageSample> samples,
                             const ResponseConfig& config) {
  if (samples.empty()) throw Error("stage response: no samples");
  for (const auto& s : samples)
    if (!std::isfinite(s.stage) || !std::isfinite(s.qoi))
      throw Error("stage response: non-finite sample");
  std::sort(samples.begin(), samples.end(),
            [](const StageSample& a, const StageSample& b) { return a.stage < b.stage; });
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].stage == samples[i - 1].stage)
      throw Error("stage response: duplicate stage");
  if (config.mode == ResponseMode::slope_one && samples.size() != 1)
    throw Error("stage response: slope_one mode takes exactly one anchor sample");
  if (config.mode == ResponseMode::piecewise_linear && samples.size() < 2)
    throw Error("stage response: piecewise mode needs at least two samples");
  if (!(config.domain.lo < config.domain.hi) || !std::isfinite(config.domain.lo) ||
      !std::isfinite(config.domain.hi))
    throw Error("stage response: empty stage domain");

  StageResponse sr;
  sr.location_ = location;
  sr.samples_ = std::move(samples);
  sr.config_ = config;

  // Breakpoints inside the domain: knots, plus the points where an
  // extrapolated end segment meets the floor.
  const double lo = config.domain.lo;
  const double hi = config.domain.hi;
  std::vector<double> stops{lo, hi};
  if (config.mode == ResponseMode::piecewise_linear) {
    for (const auto& k : sr.samples_) stops.push_back(k.stage);
    if (config.extrapolation == Extrapolation::linear_continuation && config.qoi_floor) {
      const double f = *config.qoi_floor;
      const auto n = sr.samples_.size();
      const auto& a0 = sr.samples_[0];
      const auto& a1 = sr.samples_[1];
      if (a0.qoi != a1.qoi) stops.push_back(crossing(a0, a1, f));
      const auto& b0 = sr.samples_[n - 2];
      const auto& b1 = sr.samples_[n - 1];
      if (b0.qoi != b1.qoi) stops.push_back(crossing(b0, b1, f));
    }
  }
  std::sort(stops.begin(), stops.end());
  for (double s : stops) {
    if (s < lo || s > hi) continue;
    if (!sr.vertices_.empty() && sr.vertices_.back().stage == s) continue;
    sr.vertices_.push_back({s, sr.eval(s)});
  }
  return sr;
}

double eval_Z(const StageResponse& sr, double stage) noexcept { return sr.eval(stage); }

double inverse_Z(const StageResponse& sr, double level) noexcept {
  const auto& v = sr.vertices();
  if (v.front().qoi > level) return -kInf;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].qoi > level) {
      // v[i-1].qoi <= level < v[i].qoi
      return crossing(v[i - 1], v[i], level);
    }
  }
  return kInf;
}

ExceedanceSet exceedance_intervals(const StageResponse& sr, double level) {
  const auto& v = sr.vertices();
  const auto& dom = sr.domain();
  ExceedanceSet out;
  bool open = false;
  double start = 0.0;
  if (v.front().qoi > level) {
    open = true;
    start = -kInf;
  }
  for (std::size_t i = 1; i < v.size(); ++i) {
    const bool above0 = v[i - 1].qoi > level;
    const bool above1 = v[i].qoi > level;
    if (!above0 && above1) {
      start = crossing(v[i - 1], v[i], level);
      open = true;
    } else if (above0 && !above1) {
      const double end = crossing(v[i - 1], v[i], level);
      out.intervals.push_back({start, end});
      open = false;
    }
  }
  if (open) out.intervals.push_back({start, dom.hi});
  return out;
}

} // namespace tidehaz
