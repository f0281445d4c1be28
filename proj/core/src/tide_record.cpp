#include "tidehaz/tide_record.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "text_util.hpp"
#include "tidehaz/error.hpp"
#include "tidehaz/sliding_max.hpp"

namespace tidehaz {

namespace {

int parse_fixed_digits(std::string_view s, std::size_t pos, std::size_t len,
                       std::string_view text) {
  if (pos + len > s.size()) throw Error(fmt::format("bad timestamp '{}'", text));
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') throw Error(fmt::format("bad timestamp '{}'", text));
    v = v * 10 + (c - '0');
  }
  return v;
}

void expect_char(std::string_view s, std::size_t pos, std::string_view accepted,
                 std::string_view text) {
  if (pos >= s.size() || accepted.find(s[pos]) == std::string_view::npos)
    throw Error(fmt::format("bad timestamp '{}'", text));
}

} // namespace

EpochSeconds parse_iso8601_utc(std::string_view text) {
  using namespace std::chrono;
  std::string_view s = detail::trim(text);
  // YYYY-MM-DDTHH:MM
  const int y = parse_fixed_digits(s, 0, 4, text);
  expect_char(s, 4, "-", text);
  const int mo = parse_fixed_digits(s, 5, 2, text);
  expect_char(s, 7, "-", text);
  const int d = parse_fixed_digits(s, 8, 2, text);
  expect_char(s, 10, "T ", text);
  const int hh = parse_fixed_digits(s, 11, 2, text);
  expect_char(s, 13, ":", text);
  const int mm = parse_fixed_digits(s, 14, 2, text);
  std::size_t pos = 16;
  int ss = 0;
  if (pos < s.size() && s[pos] == ':') {
    ss = parse_fixed_digits(s, pos + 1, 2, text);
    pos += 3;
  }
  std::string_view rest = s.substr(pos);
  if (!(rest.empty() || rest == "Z" || rest == "+00:00" || rest == "+0000"))
    throw Error(fmt::format("timestamp '{}' is not UTC", text));

  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60)
    throw Error(fmt::format("bad timestamp '{}'", text));
  const sys_days days{ymd};
  return days.time_since_epoch().count() * 86400LL + hh * 3600LL + mm * 60LL + ss;
}

std::string format_iso8601_utc(EpochSeconds t) {
  using namespace std::chrono;
  EpochSeconds day_count = t >= 0 ? t / 86400 : -((-t + 86399) / 86400);
  EpochSeconds secs = t - day_count * 86400;
  const year_month_day ymd{sys_days{days{day_count}}};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), secs / 3600,
                     (secs / 60) % 60, secs % 60);
}

TideRecord::TideRecord(EpochSeconds start_epoch, std::vector<double> levels,
                       std::string site_label, std::string source_kind)
    : start_epoch_(start_epoch), levels_(std::move(levels)),
      site_label_(std::move(site_label)), source_kind_(std::move(source_kind)) {
  if (levels_.empty()) throw Error("tide record is empty");
  for (double v : levels_)
    if (!std::isfinite(v)) throw Error("tide record contains a non-finite level");
}

double TideRecord::mean() const noexcept {
  return std::accumulate(levels_.begin(), levels_.end(), 0.0) /
         static_cast<double>(levels_.size());
}

double TideRecord::min() const noexcept {
  return *std::min_element(levels_.begin(), levels_.end());
}

double TideRecord::max() const noexcept {
  return *std::max_element(levels_.begin(), levels_.end());
}

TideRecord ingest_tide_csv(std::istream& in, const IngestOptions& options) {
  const auto doc = detail::read_csv(in, "tide CSV");
  detail::expect_header(doc, {"timestamp", "level_m"}, "tide CSV");
  if (doc.rows.empty()) throw Error("tide CSV: no rows");

  std::vector<double> levels;
  levels.reserve(doc.rows.size());
  const EpochSeconds start = parse_iso8601_utc(doc.rows.front()[0]);
  EpochSeconds prev = start;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    const auto line = doc.row_line_numbers[r];
    const EpochSeconds t = parse_iso8601_utc(row[0]);
    const double v = detail::parse_double(row[1], "tide CSV level_m");
    if (r > 0) {
      if (t <= prev)
        throw Error(fmt::format("tide CSV: non-monotone timestamps at line {}", line));
      if ((t - prev) % 60 != 0)
        throw Error(fmt::format("tide CSV: timestamp at line {} is off the one-minute grid", line));
      const long long gap = (t - prev) / 60;
      if (gap > 1) {
        if (options.gap_policy.fail_on_any_gap ||
            gap > options.gap_policy.interpolate_max_minutes)
          throw Error(fmt::format(
              "tide CSV: gap exceeds policy ({} minutes before line {}, limit {})",
              gap, line,
              options.gap_policy.fail_on_any_gap ? 1 : options.gap_policy.interpolate_max_minutes));
        const double a = levels.back();
        for (long long k = 1; k < gap; ++k)
          levels.push_back(a + (v - a) * static_cast<double>(k) / static_cast<double>(gap));
      }
    }
    levels.push_back(v);
    prev = t;
  }

  if (levels.size() < options.min_samples)
    throw Error(fmt::format("tide CSV: fewer than minimum samples ({} < {})",
                            levels.size(), options.min_samples));

  if (options.rebase_to_mean) {
    const double m = std::accumulate(levels.begin(), levels.end(), 0.0) /
                     static_cast<double>(levels.size());
    for (double& v : levels) v -= m;
  }
  return TideRecord(start, std::move(levels), options.site_label, options.source_kind);
}

void write_tide_csv(std::ostream& out, const TideRecord& record) {
  out << "timestamp,level_m\n";
  const auto levels = record.levels();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out << format_iso8601_utc(record.start_epoch() + static_cast<EpochSeconds>(i) * 60)
        << ',' << detail::shortest(levels[i]) << '\n';
  }
}

std::optional<std::string> msl_reference_warning(const TideRecord& record) {
  const double m = record.mean();
  if (std::abs(m) > 0.05)
    return fmt::format("record mean {:.4f} m is more than 0.05 m from MSL; "
                       "consider rebasing", m);
  return std::nullopt;
}

std::vector<HarmonicConstituent> read_constituents_csv(std::istream& in) {
  const auto doc = detail::read_csv(in, "constituent CSV");
  detail::expect_header(doc, {"name", "amplitude_m", "speed_deg_per_hr", "phase_deg"},
                        "constituent CSV");
  std::vector<HarmonicConstituent> out;
  for (const auto& row : doc.rows) {
    HarmonicConstituent c;
    c.name = row[0];
    c.amplitude_m = detail::parse_double(row[1], "constituent amplitude_m");
    c.speed_deg_per_hr = detail::parse_double(row[2], "constituent speed_deg_per_hr");
    c.phase_deg = detail::parse_double(row[3], "constituent phase_deg");
    if (c.amplitude_m < 0.0)
      throw Error(fmt::format("constituent {}: negative amplitude", c.name));
    if (c.speed_deg_per_hr <= 0.0)
      throw Error(fmt::format("constituent {}: speed must be positive", c.name));
    out.push_back(std::move(c));
  }
  return out;
}

TideRecord synthesize_tide(std::span<const HarmonicConstituent> constituents,
                           double duration_days, double msl_offset_m,
                           EpochSeconds start_epoch) {
  if (constituents.empty())
    throw std::invalid_argument("synthesize_tide: constituent list is empty");
  if (!(duration_days >= 1.0))
    throw std::invalid_argument("synthesize_tide: duration_days must be >= 1");
  for (const auto& c : constituents) {
    if (!(c.amplitude_m >= 0.0))
      throw std::invalid_argument("synthesize_tide: amplitude must be >= 0");
    if (!(c.speed_deg_per_hr > 0.0))
      throw std::invalid_argument("synthesize_tide: speed must be > 0");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_days * 1440.0));
  constexpr double deg = std::numbers::pi / 180.0;
  std::vector<double> levels(n, msl_offset_m);
  for (const auto& c : constituents) {
    for (std::size_t m = 0; m < n; ++m) {
      const double hours = static_cast<double>(m) / 60.0;
      const double angle = std::fmod(c.speed_deg_per_hr * hours + c.phase_deg, 360.0);
      levels[m] += c.amplitude_m * std::cos(angle * deg);
    }
  }
  return TideRecord(start_epoch, std::move(levels), "synthetic", "synthetic");
}

void TidalDatums::validate() const {
  const double chain[] = {xi_lowest, xi_mllw, xi_mlw, xi_msl,
                          xi_mhw, xi_mhhw, xi_highest};
  for (std::size_t i = 1; i < std::size(chain); ++i)
    if (!(chain[i - 1] <= chain[i]))
      throw Error("tidal datums out of order (lowest <= MLLW <= MLW <= MSL <= "
                  "MHW <= MHHW <= highest violated)");
  if (!(sigma0 > 0.0)) throw Error("tidal datums: sigma0 must be positive");
}

namespace {

// Indices of samples that dominate their +-radius neighbourhood, with ties
// resolved toward the earliest sample.
std::vector<std::size_t> dominant_samples(std::span<const double> v, std::size_t radius) {
  std::vector<std::size_t> out;
  if (v.size() < 2 * radius + 1) return out;
  const auto win = sliding_window_max(v, radius); // win[j] = max v[j .. j+radius-1]
  for (std::size_t i = radius; i + radius < v.size(); ++i) {
    if (v[i] > win[i - radius] && v[i] >= win[i + 1]) out.push_back(i);
  }
  return out;
}

} // namespace

TidalDatums compute_datums(const TideRecord& record) {
  const auto levels = record.levels();
  const std::size_t n = levels.size();
  if (n < kTidalDayMinutes)
    throw Error("compute_datums: record shorter than one tidal day");

  const auto highs = dominant_samples(levels, kExtremumRadiusMinutes);
  std::vector<double> negated(levels.begin(), levels.end());
  for (double& x : negated) x = -x;
  const auto lows = dominant_samples(negated, kExtremumRadiusMinutes);

  const std::size_t full_days = n / kTidalDayMinutes;

  struct Acc {
    double sum_all = 0.0;
    std::size_t n_all = 0;
    double sum_daily = 0.0;
    std::size_t n_daily = 0;
  };
  // sign = +1 for highs (daily max), -1 for lows (daily min).
  auto accumulate_extrema = [&](const std::vector<std::size_t>& idx, double sign) {
    Acc acc;
    std::size_t k = 0;
    for (std::size_t day = 0; day < full_days; ++day) {
      const std::size_t end = (day + 1) * kTidalDayMinutes;
      bool any = false;
      double best = 0.0;
      for (; k < idx.size() && idx[k] < end; ++k) {
        const double x = levels[idx[k]];
        acc.sum_all += x;
        ++acc.n_all;
        if (!any || sign * x > sign * best) best = x;
        any = true;
      }
      if (any) {
        acc.sum_daily += best;
        ++acc.n_daily;
      }
    }
    return acc;
  };

  const Acc hi = accumulate_extrema(highs, 1.0);
  const Acc lo = accumulate_extrema(lows, -1.0);
  if (hi.n_all == 0 || lo.n_all == 0)
    throw Error("compute_datums: no tidal highs/lows detected");

  TidalDatums d;
  d.xi_mhhw = hi.sum_daily / static_cast<double>(hi.n_daily);
  d.xi_mhw = hi.sum_all / static_cast<double>(hi.n_all);
  d.xi_mllw = lo.sum_daily / static_cast<double>(lo.n_daily);
  d.xi_mlw = lo.sum_all / static_cast<double>(lo.n_all);
  d.xi_msl = record.mean();
  d.xi_lowest = record.min();
  d.xi_highest = record.max();
  double ss = 0.0;
  for (double x : levels) ss += (x - d.xi_msl) * (x - d.xi_msl);
  d.sigma0 = std::sqrt(ss / static_cast<double>(n));
  d.validate();
  return d;
}

void write_datum_csv(std::ostream& out, const TidalDatums& d) {
  out << "datum,value_m\n"
      << "mllw," << detail::fixed6(d.xi_mllw) << '\n'
      << "mlw," << detail::fixed6(d.xi_mlw) << '\n'
      << "msl," << detail::fixed6(d.xi_msl) << '\n'
      << "mhw," << detail::fixed6(d.xi_mhw) << '\n'
      << "mhhw," << detail::fixed6(d.xi_mhhw) << '\n'
      << "lowest," << detail::fixed6(d.xi_lowest) << '\n'
      << "highest," << detail::fixed6(d.xi_highest) << '\n'
      << "sigma0," << detail::fixed6(d.sigma0) << '\n';
}

} // namespace tidehaz
