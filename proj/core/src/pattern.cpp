#include "tidehaz/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "text_util.hpp"
#include "tidehaz/error.hpp"

namespace tidehaz {

void GaugeSeries::validate() const {
  if (minutes_since_event.size() != eta_m.size())
    throw Error("gauge series: time and eta lengths differ");
  if (minutes_since_event.empty()) throw Error("gauge series is empty");
  for (std::size_t i = 0; i < eta_m.size(); ++i) {
    if (!std::isfinite(minutes_since_event[i]) || !std::isfinite(eta_m[i]))
      throw Error("gauge series contains non-finite values");
    if (i > 0 && !(minutes_since_event[i] > minutes_since_event[i - 1]))
      throw Error("gauge series times are not strictly ascending");
  }
  if (!std::isfinite(run_stage_m)) throw Error("gauge series run stage is not finite");
}

WavePattern::WavePattern(std::vector<WaveInterval> intervals,
                         std::vector<double> offsets, std::string source)
    : intervals_(std::move(intervals)), offsets_(std::move(offsets)),
      source_(std::move(source)) {
  if (intervals_.empty()) throw Error("wave pattern has no waves");
  if (intervals_.size() != offsets_.size())
    throw Error("wave pattern: interval and offset counts differ");
  if (intervals_.front().start != 0)
    throw Error("wave pattern: first interval must start at 0");
  double min_offset = offsets_.front();
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    const auto& iv = intervals_[k];
    if (iv.start > iv.end)
      throw Error(fmt::format("wave pattern: interval {} ends before it starts", k + 1));
    if (k > 0 && intervals_[k - 1].end > iv.start)
      throw Error(fmt::format("wave pattern: interval {} overlaps its predecessor", k + 1));
    if (!std::isfinite(offsets_[k]) || offsets_[k] < 0.0)
      throw Error(fmt::format("wave pattern: offset {} must be finite and >= 0", k + 1));
    min_offset = std::min(min_offset, offsets_[k]);
  }
  if (min_offset != 0.0)
    throw Error("wave pattern: the tallest wave must have zero offset");
}

double WavePattern::max_offset() const noexcept {
  return *std::max_element(offsets_.begin(), offsets_.end());
}

WavePattern aasze02_pattern() {
  return WavePattern({{0, 42}, {84, 124}, {160, 202}, {243, 275},
                      {309, 325}, {342, 349}, {372, 396}},
                     {0.561, 0.498, 0.517, 0.782, 0.876, 1.450, 0.000},
                     "AASZe02");
}

WavePattern extract_pattern(const GaugeSeries& gauge, const ExtractParams& params) {
  gauge.validate();
  if (!(params.threshold_fraction >= 0.0 && params.threshold_fraction < 1.0))
    throw std::invalid_argument("extract_pattern: threshold_fraction must be in [0, 1)");
  if (!(params.min_gap_minutes >= 0.0))
    throw std::invalid_argument("extract_pattern: min_gap_minutes must be >= 0");

  const auto& t = gauge.minutes_since_event;
  const auto& eta = gauge.eta_m;
  const double crest = *std::max_element(eta.begin(), eta.end());
  if (!(crest > 0.0)) throw Error("extract_pattern: no crest above zero");
  const double threshold = params.threshold_fraction * crest;

  struct Run {
    std::size_t first, last;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (!(eta[i] > threshold)) continue;
    if (!runs.empty() && runs.back().last + 1 == i) {
      runs.back().last = i;
    } else if (!runs.empty() && t[i] - t[runs.back().last] < params.min_gap_minutes) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i});
    }
  }
  if (runs.empty()) throw Error("extract_pattern: no wave above threshold");

  std::vector<WaveInterval> intervals;
  std::vector<double> heights;
  for (const auto& run : runs) {
    double h = eta[run.first];
    for (std::size_t i = run.first; i <= run.last; ++i) h = std::max(h, eta[i]);
    std::size_t a = run.first;
    std::size_t b = run.last;
    if (params.width_rule == ExtractParams::WidthRule::half_amplitude) {
      const double half = 0.5 * h;
      while (eta[a] < half) ++a;
      while (eta[b] < half) --b;
    }
    WaveInterval iv{static_cast<int>(std::floor(t[a])),
                    static_cast<int>(std::ceil(t[b]))};
    if (!intervals.empty()) {
      // Outward rounding of sub-minute times can make neighbours touch.
      iv.start = std::max(iv.start, intervals.back().end);
      iv.end = std::max(iv.end, iv.start);
    }
    intervals.push_back(iv);
    heights.push_back(h);
  }

  const int origin = intervals.front().start;
  std::vector<double> offsets;
  offsets.reserve(heights.size());
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    intervals[k].start -= origin;
    intervals[k].end -= origin;
    offsets.push_back(crest - heights[k]);
  }
  return WavePattern(std::move(intervals), std::move(offsets), "extracted");
}

GaugeSeries proxy_pattern(double amplitude_m, const GMethodParams& gp) {
  if (!(amplitude_m > 0.0))
    throw std::invalid_argument("proxy_pattern: amplitude must be positive");
  gp.validate();
  GaugeSeries g;
  const auto n = static_cast<std::size_t>(gp.duration_minutes) + 1;
  g.minutes_since_event.resize(n);
  g.eta_m.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double tm = static_cast<double>(i);
    g.minutes_since_event[i] = tm;
    g.eta_m[i] = amplitude_m * std::exp(-tm / gp.efold_minutes) *
                 std::cos(2.0 * std::numbers::pi * tm / gp.period_minutes);
  }
  return g;
}

int recommend_dt(const WavePattern& pattern, double near_equal_margin) {
  if (!(near_equal_margin >= 0.0))
    throw std::invalid_argument("recommend_dt: margin must be >= 0");
  int lo = 0;
  int hi = 0;
  bool any = false;
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (pattern.offsets()[k] > near_equal_margin) continue;
    const auto& iv = pattern.intervals()[k];
    lo = any ? std::min(lo, iv.start) : iv.start;
    hi = any ? std::max(hi, iv.end) : iv.end;
    any = true;
  }
  return hi - lo;
}

GaugeSeries read_gauge_csv(std::istream& in) {
  const auto doc = detail::read_csv(in, "gauge CSV");
  detail::expect_header(doc, {"t_min", "eta_m"}, "gauge CSV");
  GaugeSeries g;
  if (doc.meta.count("run_stage_m"))
    g.run_stage_m = detail::meta_double(doc, "run_stage_m", "gauge CSV");
  for (const auto& row : doc.rows) {
    g.minutes_since_event.push_back(detail::parse_double(row[0], "gauge CSV t_min"));
    g.eta_m.push_back(detail::parse_double(row[1], "gauge CSV eta_m"));
  }
  g.validate();
  return g;
}

void write_pattern_json(std::ostream& out, const WavePattern& pattern) {
  nlohmann::ordered_json j;
  j["source"] = pattern.source();
  auto intervals = nlohmann::ordered_json::array();
  for (const auto& iv : pattern.intervals()) intervals.push_back({iv.start, iv.end});
  j["intervals"] = std::move(intervals);
  j["offsets"] = pattern.offsets();
  j["duration"] = pattern.duration();
  out << j.dump(2) << '\n';
}

WavePattern read_pattern_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    std::vector<WaveInterval> intervals;
    for (const auto& iv : j.at("intervals")) {
      if (!iv.is_array() || iv.size() != 2)
        throw Error("pattern JSON: each interval must be [start, end]");
      intervals.push_back({iv.at(0).get<int>(), iv.at(1).get<int>()});
    }
    auto offsets = j.at("offsets").get<std::vector<double>>();
    std::string source = j.contains("source") ? j.at("source").get<std::string>() : "";
    WavePattern p(std::move(intervals), std::move(offsets), std::move(source));
    if (j.contains("duration") && j.at("duration").get<int>() != p.duration())
      throw Error("pattern JSON: duration does not match the last interval end");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(fmt::format("pattern JSON: {}", e.what()));
  }
}

} // namespace tidehaz
