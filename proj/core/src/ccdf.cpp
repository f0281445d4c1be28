#include "tidehaz/ccdf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>

#include <fmt/format.h>

#include "text_util.hpp"
#include "tidehaz/error.hpp"
#include "tidehaz/sliding_max.hpp"

namespace tidehaz {

void GMethodParams::validate() const {
  if (!(sigma0 > 0.0)) throw std::invalid_argument("GMethodParams: sigma0 must be > 0");
  if (duration_minutes <= 0)
    throw std::invalid_argument("GMethodParams: T_G must be > 0");
  if (!(period_minutes > 0.0))
    throw std::invalid_argument("GMethodParams: period must be > 0");
  if (!(efold_minutes > 0.0))
    throw std::invalid_argument("GMethodParams: e-folding time must be > 0");
}

// ---------------------------------------------------------------------------
// Bins

BinSpec BinSpec::covering(double lo, double hi, double width) {
  if (!(width > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("BinSpec::covering: need finite lo <= hi and width > 0");
  BinSpec b;
  b.width = width;
  b.first_index = static_cast<std::int64_t>(std::floor(lo / width));
  while (b.edge(0) > lo) --b.first_index;
  auto last = static_cast<std::int64_t>(std::ceil(hi / width));
  b.count = static_cast<std::size_t>(std::max<std::int64_t>(1, last - b.first_index));
  while (b.edge(b.count) < hi) ++b.count;
  return b;
}

std::ptrdiff_t BinSpec::locate(double v) const noexcept {
  if (!(v > edge(0))) return -1;
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (v > edge(count)) return n - 1;
  auto i = static_cast<std::ptrdiff_t>(std::ceil(v / width)) - 1 -
           static_cast<std::ptrdiff_t>(first_index);
  i = std::clamp<std::ptrdiff_t>(i, 0, n - 1);
  while (i + 1 < n && edge(static_cast<std::size_t>(i + 1)) < v) ++i;
  while (i > 0 && edge(static_cast<std::size_t>(i)) >= v) --i;
  return i;
}

BinSpec default_bins(const TideRecord& record, double max_offset, double width) {
  if (!(max_offset >= 0.0)) throw std::invalid_argument("default_bins: max_offset must be >= 0");
  return BinSpec::covering(record.min() - max_offset - width, record.max() + width, width);
}

// ---------------------------------------------------------------------------
// Table

CcdfTable::CcdfTable(BinSpec bins, std::vector<double> phi,
                     std::vector<std::uint64_t> counts, std::uint64_t n_windows,
                     std::string method_tag)
    : bins_(bins), phi_(std::move(phi)), counts_(std::move(counts)),
      n_windows_(n_windows), method_tag_(std::move(method_tag)) {
  if (bins_.count == 0 || phi_.size() != bins_.count)
    throw Error("CCDF table: phi length does not match bin count");
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    if (!(phi_[i] >= 0.0 && phi_[i] <= 1.0))
      throw Error("CCDF table: phi outside [0, 1]");
    if (i > 0 && phi_[i] > phi_[i - 1]) throw Error("CCDF table: phi is increasing");
  }
  pdf_.resize(phi_.size());
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    const double next = i + 1 < phi_.size() ? phi_[i + 1] : 0.0;
    pdf_[i] = (phi_[i] - next) / bins_.width;
  }
}

CcdfTable CcdfTable::from_counts(BinSpec bins, std::vector<std::uint64_t> exceed_counts,
                                 std::uint64_t n_windows, std::string method_tag) {
  if (n_windows == 0) throw Error("CCDF table: no windows");
  if (exceed_counts.size() != bins.count)
    throw Error("CCDF table: count length does not match bin count");
  std::vector<double> phi(exceed_counts.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] = static_cast<double>(exceed_counts[i]) / static_cast<double>(n_windows);
  return CcdfTable(bins, std::move(phi), std::move(exceed_counts), n_windows,
                   std::move(method_tag));
}

CcdfTable CcdfTable::from_phi(BinSpec bins, std::vector<double> phi, std::uint64_t n_windows,
                              std::string method_tag) {
  return CcdfTable(bins, std::move(phi), {}, n_windows, std::move(method_tag));
}

// ---------------------------------------------------------------------------
// Window builders

namespace {

using Histogram = std::vector<std::uint64_t>;

void add_to_histogram(std::span<const double> values, const BinSpec& bins, Histogram& hist) {
  for (double v : values) {
    const auto i = bins.locate(v);
    if (i >= 0) ++hist[static_cast<std::size_t>(i)];
  }
}

// Runs `stop_values(begin, end, out)` over chunks of slider stops, bins
// every value and turns the merged histogram into exceedance counts.
template <class StopValues>
CcdfTable table_from_stops(std::size_t n_stops, const BinSpec& bins, Exec exec,
                           std::string tag, const TideRecord& record,
                           StopValues&& stop_values) {
  if (bins.count == 0) throw std::invalid_argument("bins must not be empty");
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(exec.resolved(), n_stops));
  std::vector<Histogram> partial(workers, Histogram(bins.count, 0));
  parallel_chunks(n_stops, Exec{static_cast<unsigned>(workers)},
                  [&](std::size_t begin, std::size_t end, std::size_t chunk) {
                    constexpr std::size_t kBlock = 1 << 15;
                    std::vector<double> values;
                    for (std::size_t b = begin; b < end; b += kBlock) {
                      const std::size_t e = std::min(end, b + kBlock);
                      values.assign(e - b, -std::numeric_limits<double>::infinity());
                      stop_values(b, e, std::span<double>(values));
                      add_to_histogram(values, bins, partial[chunk]);
                    }
                  });
  Histogram hist(bins.count, 0);
  for (const auto& h : partial)
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
  // Cumulate downward: counts[j] = #values in bins >= j = #values > edge(j).
  std::vector<std::uint64_t> counts(bins.count, 0);
  std::uint64_t running = 0;
  for (std::size_t i = bins.count; i-- > 0;) {
    running += hist[i];
    counts[i] = running;
  }
  auto table = CcdfTable::from_counts(bins, std::move(counts), n_stops, std::move(tag));
  table.xi_lowest = record.min();
  table.xi_highest = record.max();
  return table;
}

} // namespace

CcdfTable build_phi0(const TideRecord& record, const BinSpec& bins, Exec exec) {
  auto levels = record.levels();
  return table_from_stops(levels.size(), bins, exec, "phi0", record,
                          [&](std::size_t b, std::size_t e, std::span<double> out) {
                            std::copy(levels.begin() + static_cast<std::ptrdiff_t>(b),
                                      levels.begin() + static_cast<std::ptrdiff_t>(e),
                                      out.begin());
                          });
}

CcdfTable build_phi_dt(const TideRecord& record, int dt_minutes, const BinSpec& bins,
                       Exec exec) {
  if (dt_minutes < 0) throw std::invalid_argument("build_phi_dt: dt must be >= 0");
  auto levels = record.levels();
  const auto dt = static_cast<std::size_t>(dt_minutes);
  if (dt >= levels.size()) throw Error("build_phi_dt: window longer than record");
  const std::size_t window = dt + 1;
  return table_from_stops(
      levels.size() - dt, bins, exec, fmt::format("dt:{}", dt_minutes), record,
      [&](std::size_t b, std::size_t e, std::span<double> out) {
        std::vector<std::size_t> scratch;
        sliding_window_max(levels.subspan(b, e - b + dt), window, out, scratch);
      });
}

double phi_infinity(double xi_hat, const TidalDatums& datums) noexcept {
  return xi_hat < datums.xi_highest ? 1.0 : 0.0;
}

CcdfTable build_phi_pattern(const TideRecord& record, const WavePattern& pattern,
                            const BinSpec& bins, Exec exec) {
  auto levels = record.levels();
  const auto duration = static_cast<std::size_t>(pattern.duration());
  if (duration >= levels.size()) throw Error("build_phi_pattern: pattern longer than record");
  const std::string tag =
      "pattern" + (pattern.source().empty() ? std::string() : ":" + pattern.source());
  return table_from_stops(
      levels.size() - duration, bins, exec, tag, record,
      [&](std::size_t b, std::size_t e, std::span<double> out) {
        const std::size_t n = e - b;
        std::vector<std::size_t> scratch;
        std::vector<double> wave_max(n);
        for (std::size_t k = 0; k < pattern.size(); ++k) {
          const auto& iv = pattern.intervals()[k];
          const double offset = pattern.offsets()[k];
          const auto start = static_cast<std::size_t>(iv.start);
          const auto window = static_cast<std::size_t>(iv.end - iv.start) + 1;
          sliding_window_max(levels.subspan(b + start, n + window - 1), window, wave_max,
                             scratch);
          for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], wave_max[i] - offset);
        }
      });
}

CcdfTable build_phi_g_direct(const TideRecord& record, double amplitude_m,
                             const GMethodParams& gp, const BinSpec& bins, Exec exec) {
  const GaugeSeries proxy = proxy_pattern(amplitude_m, gp);
  auto levels = record.levels();
  const auto duration = static_cast<std::size_t>(gp.duration_minutes);
  if (duration >= levels.size())
    throw Error("build_phi_g_direct: record shorter than T_G + 1 minutes");

  // A term with xi_max - D(t) < xi_min can never beat the t = 0 term
  // (D(0) = 0, so every stop is at least xi_min); drop those minutes.
  const double range = record.max() - record.min();
  std::vector<std::size_t> lags;
  std::vector<double> deficit;
  for (std::size_t t = 0; t <= duration; ++t) {
    const double d = amplitude_m - proxy.eta_m[t];
    if (d <= range) {
      lags.push_back(t);
      deficit.push_back(d);
    }
  }
  return table_from_stops(levels.size() - duration, bins, exec,
                          fmt::format("g_direct:{}", detail::shortest(amplitude_m)), record,
                          [&](std::size_t b, std::size_t e, std::span<double> out) {
                            const std::size_t n = e - b;
                            for (std::size_t j = 0; j < lags.size(); ++j) {
                              const double* x = levels.data() + b + lags[j];
                              const double d = deficit[j];
                              double* o = out.data();
                              for (std::size_t i = 0; i < n; ++i)
                                o[i] = std::max(o[i], x[i] - d);
                            }
                          });
}

// ---------------------------------------------------------------------------
// G method closed form

MomentSummary mofjeld_params(double amplitude_m, const GMethodParams& gp,
                             const TidalDatums& datums) {
  if (!(amplitude_m > 0.0))
    throw std::invalid_argument("mofjeld_params: amplitude must be positive");
  gp.validate();
  const double r = amplitude_m / gp.sigma0;
  MomentSummary m;
  m.xi0 = gp.C * datums.xi_mhhw * std::exp(-gp.alpha * std::pow(r, gp.beta));
  m.sigma = gp.sigma0 * (1.0 - gp.C_prime * std::exp(-gp.alpha_prime * std::pow(r, gp.beta_prime)));
  return m;
}

double phi_erf(double xi_hat, const MomentSummary& m) {
  if (!(m.sigma > 0.0)) throw std::invalid_argument("phi_erf: sigma must be positive");
  return 0.5 * std::erfc((xi_hat - m.xi0) / (std::numbers::sqrt2 * m.sigma));
}

double g_amplitude(double qoi_at_mhhw, const GMethodParams& gp, const TidalDatums& datums) {
  return qoi_at_mhhw + gp.xi_ref - (datums.xi_mhhw - gp.subsidence);
}

double g_zeta0(double qoi_at_mhhw, const MomentSummary& m, const TidalDatums& datums) {
  return qoi_at_mhhw - datums.xi_mhhw + m.xi0;
}

CcdfTable tabulate_erf(const MomentSummary& m, const BinSpec& bins) {
  std::vector<double> phi(bins.count);
  for (std::size_t i = 0; i < bins.count; ++i) phi[i] = phi_erf(bins.edge(i), m);
  return CcdfTable::from_phi(bins, std::move(phi), 0, "g_erf");
}

// ---------------------------------------------------------------------------
// Summaries and lookup

MomentSummary moments(const CcdfTable& table) {
  const auto& bins = table.bins();
  const auto& phi = table.phi();
  double total = 0.0;
  double first = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double mass = phi[i] - (i + 1 < phi.size() ? phi[i + 1] : 0.0);
    total += mass;
    first += mass * (bins.edge(i) + 0.5 * bins.width);
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw Error(fmt::format("moments: density mass is {} rather than 1", total));
  const double mean = first / total;
  double second = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double mass = phi[i] - (i + 1 < phi.size() ? phi[i + 1] : 0.0);
    const double c = bins.edge(i) + 0.5 * bins.width - mean;
    second += mass * c * c;
  }
  return {mean, std::sqrt(std::max(0.0, second / total))};
}

double eval_phi(const CcdfTable& table, double xi_hat) {
  if (std::isnan(xi_hat)) throw std::invalid_argument("eval_phi: NaN stage");
  const auto& bins = table.bins();
  const auto& phi = table.phi();
  if (xi_hat < bins.edge(0)) return 1.0;
  if (xi_hat >= bins.upper()) return 0.0;
  auto i = static_cast<std::size_t>(
      std::clamp<double>(std::floor((xi_hat - bins.edge(0)) / bins.width), 0.0,
                         static_cast<double>(bins.count - 1)));
  while (i + 1 < bins.count && bins.edge(i + 1) <= xi_hat) ++i;
  while (i > 0 && bins.edge(i) > xi_hat) --i;
  const double left = bins.edge(i);
  const double right = bins.edge(i + 1);
  const double next = i + 1 < phi.size() ? phi[i + 1] : 0.0;
  return phi[i] + (xi_hat - left) / (right - left) * (next - phi[i]);
}

// ---------------------------------------------------------------------------
// Files

void write_phi_csv(std::ostream& out, const CcdfTable& table,
                   const std::optional<MomentSummary>& m) {
  out << "# method=" << table.method_tag() << '\n'
      << "# n_windows=" << table.n_windows() << '\n'
      << "# bin_width_m=" << detail::shortest(table.bins().width) << '\n';
  if (table.xi_lowest && table.xi_highest)
    out << "# xi_lowest_m=" << detail::fixed6(*table.xi_lowest)
        << ", xi_highest_m=" << detail::fixed6(*table.xi_highest) << '\n';
  if (m) out << "# xi0_m=" << detail::fixed6(m->xi0) << ", sigma_m=" << detail::fixed6(m->sigma) << '\n';
  out << "bin_left_m,phi,pdf_per_m\n";
  const auto& bins = table.bins();
  for (std::size_t i = 0; i < bins.count; ++i) {
    out << detail::fixed6(bins.edge(i)) << ',' << detail::fixed6(table.phi()[i]) << ','
        << detail::fixed6(table.pdf()[i]) << '\n';
  }
}

CcdfTable read_phi_csv(std::istream& in) {
  const auto doc = detail::read_csv(in, "phi CSV");
  detail::expect_header(doc, {"bin_left_m", "phi", "pdf_per_m"}, "phi CSV");
  if (doc.rows.empty()) throw Error("phi CSV: no rows");
  const double width = detail::meta_double(doc, "bin_width_m", "phi CSV");
  if (!(width > 0.0)) throw Error("phi CSV: bin width must be positive");
  BinSpec bins;
  bins.width = width;
  bins.count = doc.rows.size();
  bins.first_index = std::llround(detail::parse_double(doc.rows[0][0], "phi CSV bin_left_m") / width);
  std::vector<double> phi;
  phi.reserve(bins.count);
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    const double edge = detail::parse_double(doc.rows[i][0], "phi CSV bin_left_m");
    if (std::abs(edge - bins.edge(i)) > 0.5e-6 + 1e-9 * std::abs(edge))
      throw Error(fmt::format("phi CSV: bin edges are not uniform at line {}",
                              doc.row_line_numbers[i]));
    phi.push_back(detail::parse_double(doc.rows[i][1], "phi CSV phi"));
  }
  std::uint64_t n_windows = 0;
  if (doc.meta.count("n_windows"))
    n_windows = static_cast<std::uint64_t>(detail::parse_int(doc.meta.at("n_windows"), "phi CSV n_windows"));
  std::string tag = doc.meta.count("method") ? doc.meta.at("method") : "file";
  auto table = CcdfTable::from_phi(bins, std::move(phi), n_windows, std::move(tag));
  if (doc.meta.count("xi_lowest_m") && doc.meta.count("xi_highest_m")) {
    table.xi_lowest = detail::meta_double(doc, "xi_lowest_m", "phi CSV");
    table.xi_highest = detail::meta_double(doc, "xi_highest_m", "phi CSV");
  }
  return table;
}

} // namespace tidehaz
