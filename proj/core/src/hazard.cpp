#include "tidehaz/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "text_util.hpp"
#include "tidehaz/error.hpp"

namespace tidehaz {

ExceedanceLevels::ExceedanceLevels(std::vector<double> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw Error("exceedance levels: empty");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!std::isfinite(levels_[i]) || levels_[i] < 0.0)
      throw Error("exceedance levels must be finite and nonnegative");
    if (i > 0 && !(levels_[i] > levels_[i - 1]))
      throw Error("exceedance levels must be strictly ascending");
  }
}

ExceedanceLevels ExceedanceLevels::standard() {
  std::vector<double> v;
  for (int k = 0; k <= 20; ++k) v.push_back(k / 10.0);
  for (int k = 25; k <= 55; k += 5) v.push_back(k / 10.0);
  for (int k = 6; k <= 12; ++k) v.push_back(static_cast<double>(k));
  return ExceedanceLevels(std::move(v));
}

GridField DiffSummary::abs_field() const {
  GridField out = diff;
  for (auto& row : out.probabilities)
    for (double& x : row) x = std::abs(x);
  out.method_tag = "abs(" + diff.method_tag + ")";
  return out;
}

HazardCurve psi(const StageResponse& sr, const CcdfTable& phi, const ExceedanceLevels& levels,
                PsiMode mode) {
  HazardCurve curve;
  curve.location = sr.location();
  curve.levels = levels;
  curve.method_tag = phi.method_tag();
  curve.probabilities.reserve(levels.size());
  const double top = sr.domain().hi;
  for (double zeta : levels.values()) {
    if (mode == PsiMode::infimum) {
      curve.probabilities.push_back(eval_phi(phi, inverse_Z(sr, zeta)));
    } else {
      double p = 0.0;
      for (const auto& iv : exceedance_intervals(sr, zeta).intervals) {
        const double upper = iv.b >= top ? 0.0 : eval_phi(phi, iv.b);
        p += eval_phi(phi, iv.a) - upper;
      }
      curve.probabilities.push_back(p);
    }
  }
  return curve;
}

GridField hazard_grid(const std::vector<StageResponse>& responses, const CcdfTable& phi,
                      const ExceedanceLevels& levels, PsiMode mode, Exec exec) {
  if (responses.empty()) throw std::invalid_argument("hazard_grid: no locations");
  GridField field;
  field.levels = levels;
  field.method_tag = phi.method_tag();
  field.locations.resize(responses.size());
  field.probabilities.resize(responses.size());
  parallel_chunks(responses.size(), exec, [&](std::size_t b, std::size_t e, std::size_t) {
    for (std::size_t i = b; i < e; ++i) {
      auto curve = psi(responses[i], phi, levels, mode);
      field.locations[i] = curve.location;
      field.probabilities[i] = std::move(curve.probabilities);
    }
  });
  return field;
}

HazardCurve g_method_curve(const Location& location, double qoi_at_mhhw,
                           const ExceedanceLevels& levels, const GMethodParams& gp,
                           const TidalDatums& datums) {
  gp.validate();
  const double amplitude = g_amplitude(qoi_at_mhhw, gp, datums);
  const MomentSummary m =
      amplitude > 0.0 ? mofjeld_params(amplitude, gp, datums)
                      : MomentSummary{gp.C * datums.xi_mhhw, gp.sigma0 * (1.0 - gp.C_prime)};
  const MomentSummary zeta{g_zeta0(qoi_at_mhhw, m, datums), m.sigma};
  HazardCurve curve;
  curve.location = location;
  curve.levels = levels;
  curve.method_tag = "g_erf";
  for (double z : levels.values()) curve.probabilities.push_back(phi_erf(z, zeta));
  return curve;
}

DiffSummary compare_fields(const GridField& a, const GridField& b) {
  if (a.locations != b.locations)
    throw Error("compare_fields: fields cover different locations");
  if (a.levels != b.levels) throw Error("compare_fields: fields use different levels");
  if (a.probabilities.size() != b.probabilities.size())
    throw Error("compare_fields: mismatched shapes");
  DiffSummary s;
  s.diff.locations = a.locations;
  s.diff.levels = a.levels;
  s.diff.method_tag = a.method_tag + " - " + b.method_tag;
  bool any = false;
  for (std::size_t i = 0; i < a.probabilities.size(); ++i) {
    const auto& ra = a.probabilities[i];
    const auto& rb = b.probabilities[i];
    if (ra.size() != a.levels.size() || rb.size() != ra.size())
      throw Error("compare_fields: mismatched shapes");
    std::vector<double> row(ra.size());
    for (std::size_t j = 0; j < ra.size(); ++j) {
      row[j] = ra[j] - rb[j];
      s.max_diff = any ? std::max(s.max_diff, row[j]) : row[j];
      s.min_diff = any ? std::min(s.min_diff, row[j]) : row[j];
      any = true;
    }
    s.diff.probabilities.push_back(std::move(row));
  }
  return s;
}

CcdfTable oracle_phi(const TideRecord& record, const WavePattern& pattern, const BinSpec& bins) {
  const auto x = record.levels();
  if (x.size() > kOracleMaxMinutes)
    throw Error(fmt::format("oracle_phi: input too large for oracle ({} > {} minutes)", x.size(),
                            kOracleMaxMinutes));
  const auto duration = static_cast<std::size_t>(pattern.duration());
  if (duration >= x.size()) throw Error("oracle_phi: pattern longer than record");
  const std::size_t stops = x.size() - duration;
  std::vector<std::uint64_t> counts(bins.count, 0);
  for (std::size_t t0 = 0; t0 < stops; ++t0) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pattern.size(); ++k) {
      const auto& iv = pattern.intervals()[k];
      double wave = -std::numeric_limits<double>::infinity();
      for (int t = iv.start; t <= iv.end; ++t)
        wave = std::max(wave, x[t0 + static_cast<std::size_t>(t)]);
      best = std::max(best, wave - pattern.offsets()[k]);
    }
    for (std::size_t j = 0; j < bins.count; ++j)
      if (best > bins.edge(j)) ++counts[j];
  }
  auto table = CcdfTable::from_counts(bins, std::move(counts), stops, "oracle");
  table.xi_lowest = record.min();
  table.xi_highest = record.max();
  return table;
}

// ---------------------------------------------------------------------------
// Files

std::string level_label(double level) { return detail::shortest(level); }

ZTable read_ztable_csv(std::istream& in) {
  const auto doc = detail::read_csv(in, "Z-table CSV");
  const auto& h = doc.header;
  if (h.size() < 4 || h[0] != "lon" || h[1] != "lat" || h[2] != "bathy_m")
    throw Error("Z-table CSV: header must be lon,lat,bathy_m,stage:<s1>,...");
  ZTable t;
  for (std::size_t c = 3; c < h.size(); ++c) {
    if (h[c].rfind("stage:", 0) != 0)
      throw Error(fmt::format("Z-table CSV: column '{}' is not a stage column", h[c]));
    const double s = detail::parse_double(std::string_view(h[c]).substr(6), "Z-table stage");
    if (std::find(t.stages.begin(), t.stages.end(), s) != t.stages.end())
      throw Error("Z-table CSV: duplicate stage column");
    t.stages.push_back(s);
  }
  for (const auto& row : doc.rows) {
    t.locations.push_back({detail::parse_double(row[0], "Z-table lon"),
                           detail::parse_double(row[1], "Z-table lat"),
                           detail::parse_double(row[2], "Z-table bathy_m")});
    std::vector<double> q;
    for (std::size_t c = 3; c < row.size(); ++c)
      q.push_back(detail::parse_double(row[c], "Z-table qoi"));
    t.qoi.push_back(std::move(q));
  }
  if (t.locations.empty()) throw Error("Z-table CSV: no locations");
  return t;
}

std::vector<StageResponse> responses_from_ztable(const ZTable& table, const ResponseConfig& config,
                                                 double anchor_stage) {
  std::size_t anchor_col = table.stages.size();
  if (config.mode == ResponseMode::slope_one) {
    for (std::size_t c = 0; c < table.stages.size(); ++c)
      if (std::abs(table.stages[c] - anchor_stage) <= 1e-9) anchor_col = c;
    if (anchor_col == table.stages.size())
      throw Error(fmt::format("Z-table has no stage column at anchor stage {}", anchor_stage));
  }
  std::vector<StageResponse> out;
  out.reserve(table.locations.size());
  for (std::size_t i = 0; i < table.locations.size(); ++i) {
    std::vector<StageSample> samples;
    if (config.mode == ResponseMode::slope_one) {
      samples.push_back({table.stages[anchor_col], table.qoi[i][anchor_col]});
    } else {
      for (std::size_t c = 0; c < table.stages.size(); ++c)
        samples.push_back({table.stages[c], table.qoi[i][c]});
    }
    out.push_back(build_response(table.locations[i], std::move(samples), config));
  }
  return out;
}

namespace {

void write_field(std::ostream& out, const GridField& field, const char* prefix, bool absolute) {
  out << "lon,lat,bathy_m";
  for (double z : field.levels.values()) out << ',' << prefix << level_label(z);
  out << '\n';
  for (std::size_t i = 0; i < field.locations.size(); ++i) {
    const auto& loc = field.locations[i];
    out << detail::fixed6(loc.lon) << ',' << detail::fixed6(loc.lat) << ','
        << detail::fixed6(loc.bathy_m);
    for (double p : field.probabilities[i]) out << ',' << detail::fixed6(absolute ? std::abs(p) : p);
    out << '\n';
  }
}

} // namespace

void write_hazard_csv(std::ostream& out, const GridField& field) {
  if (!field.method_tag.empty()) out << "# method=" << field.method_tag << '\n';
  write_field(out, field, "p_gt_", false);
}

GridField read_hazard_csv(std::istream& in) {
  const auto doc = detail::read_csv(in, "hazard CSV");
  const auto& h = doc.header;
  if (h.size() < 4 || h[0] != "lon" || h[1] != "lat" || h[2] != "bathy_m")
    throw Error("hazard CSV: header must be lon,lat,bathy_m,p_gt_<zeta>,...");
  std::vector<double> levels;
  for (std::size_t c = 3; c < h.size(); ++c) {
    if (h[c].rfind("p_gt_", 0) != 0)
      throw Error(fmt::format("hazard CSV: column '{}' is not a p_gt_ column", h[c]));
    levels.push_back(detail::parse_double(std::string_view(h[c]).substr(5), "hazard level"));
  }
  GridField f;
  f.levels = ExceedanceLevels(std::move(levels));
  f.method_tag = doc.meta.count("method") ? doc.meta.at("method") : "file";
  for (const auto& row : doc.rows) {
    f.locations.push_back({detail::parse_double(row[0], "hazard lon"),
                           detail::parse_double(row[1], "hazard lat"),
                           detail::parse_double(row[2], "hazard bathy_m")});
    std::vector<double> p;
    for (std::size_t c = 3; c < row.size(); ++c)
      p.push_back(detail::parse_double(row[c], "hazard probability"));
    f.probabilities.push_back(std::move(p));
  }
  return f;
}

void write_diff_csv(std::ostream& out, const DiffSummary& summary, bool absolute) {
  write_field(out, summary.diff, "d_", absolute);
  out << "# max_diff=" << detail::fixed6(summary.max_diff)
      << ", min_diff=" << detail::fixed6(summary.min_diff) << '\n';
}

} // namespace tidehaz
