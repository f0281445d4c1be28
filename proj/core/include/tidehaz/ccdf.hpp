#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tidehaz/g_params.hpp"
#include "tidehaz/parallel.hpp"
#include "tidehaz/pattern.hpp"
#include "tidehaz/tide_record.hpp"

namespace tidehaz {

/// Uniform stage bins. Left edge i sits at (first_index + i) * width, so
/// edges are exact multiples of the width and tables built for the same
/// site line up bin for bin.
struct BinSpec {
  std::int64_t first_index = 0;
  double width = 0.01;
  std::size_t count = 0;

  double edge(std::size_t i) const noexcept {
    return static_cast<double>(first_index + static_cast<std::int64_t>(i)) * width;
  }
  double lower() const noexcept { return edge(0); }
  double upper() const noexcept { return edge(count); }

  /// Smallest grid-aligned bin set whose edges span [lo, hi].
  static BinSpec covering(double lo, double hi, double width);

  /// Bin holding v: the first bin whose right edge is >= v. Returns -1 when
  /// v <= lower() and count - 1 when v lies beyond upper().
  std::ptrdiff_t locate(double v) const noexcept;

  friend bool operator==(const BinSpec&, const BinSpec&) = default;
};

/// Default bins for a record slid under a pattern whose largest offset is
/// max_offset: [min - max_offset - width, max + width].
BinSpec default_bins(const TideRecord& record, double max_offset = 0.0,
                     double width = 0.01);

/// Mean and standard deviation of a density.
struct MomentSummary {
  double xi0 = 0.0;
  double sigma = 0.0;
};

/// Complementary CDF Phi tabulated at the left bin edges, with the density
/// phi per bin. Tables built by sliding a window over a record also carry
/// the integer exceedance counts they were normalised from.
class CcdfTable {
public:
  /// Table from exceedance counts: phi[i] = counts[i] / n_windows.
  static CcdfTable from_counts(BinSpec bins, std::vector<std::uint64_t> exceed_counts,
                               std::uint64_t n_windows, std::string method_tag);

  /// Table from Phi values at the left edges (tabulated closed forms, files).
  static CcdfTable from_phi(BinSpec bins, std::vector<double> phi,
                            std::uint64_t n_windows, std::string method_tag);

  const BinSpec& bins() const noexcept { return bins_; }
  const std::vector<double>& phi() const noexcept { return phi_; }
  const std::vector<double>& pdf() const noexcept { return pdf_; }
  /// Number of windows with value > edge(i); empty for tabulated tables.
  const std::vector<std::uint64_t>& exceed_counts() const noexcept { return counts_; }
  std::uint64_t n_windows() const noexcept { return n_windows_; }
  const std::string& method_tag() const noexcept { return method_tag_; }

  /// Tide range of the record the table was built from, when known. Used
  /// as the stage domain for hazard evaluation.
  std::optional<double> xi_lowest;
  std::optional<double> xi_highest;

private:
  CcdfTable(BinSpec bins, std::vector<double> phi, std::vector<std::uint64_t> counts,
            std::uint64_t n_windows, std::string method_tag);

  BinSpec bins_;
  std::vector<double> phi_;
  std::vector<double> pdf_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_windows_ = 0;
  std::string method_tag_;
};

/// Phi_0: fraction of samples strictly above each edge.
CcdfTable build_phi0(const TideRecord& record, const BinSpec& bins, Exec exec = {});

/// Phi_dt: a window of dt_minutes + 1 samples slides one minute at a time
/// over every full position; each stop contributes its maximum.
CcdfTable build_phi_dt(const TideRecord& record, int dt_minutes, const BinSpec& bins,
                       Exec exec = {});

/// Limit of Phi_dt as dt grows: 1 below the highest tide, 0 at or above it.
double phi_infinity(double xi_hat, const TidalDatums& datums) noexcept;

/// Phi_Pattern: each stop t0 contributes max_k(max_{t in I_k} xi(t0 + t) - D_k).
CcdfTable build_phi_pattern(const TideRecord& record, const WavePattern& pattern,
                            const BinSpec& bins, Exec exec = {});

/// Phi_G without the Gaussian approximation: each stop contributes
/// max_{t in [0, T_G]} (xi(t0 + t) - D(t)), D(t) = A_G - eta(t) of the
/// proxy tsunami.
CcdfTable build_phi_g_direct(const TideRecord& record, double amplitude_m,
                             const GMethodParams& gp, const BinSpec& bins,
                             Exec exec = {});

/// Regression (xi0, sigma) of the G method for amplitude A_G:
///   xi0   = C * MHHW * exp(-alpha * (A_G / sigma0)^beta)
///   sigma = sigma0 * (1 - C' * exp(-alpha' * (A_G / sigma0)^beta'))
MomentSummary mofjeld_params(double amplitude_m, const GMethodParams& gp,
                             const TidalDatums& datums);

/// Gaussian CCDF 0.5 * (1 - erf((xi_hat - xi0) / (sqrt(2) sigma))).
double phi_erf(double xi_hat, const MomentSummary& m);

/// G-method amplitude from the single run at MHHW:
/// A_G = Z(MHHW) + xi_ref - (MHHW - S).
double g_amplitude(double qoi_at_mhhw, const GMethodParams& gp, const TidalDatums& datums);

/// Mean QoI under the G method: zeta0 = Z(MHHW) - MHHW + xi0.
double g_zeta0(double qoi_at_mhhw, const MomentSummary& m, const TidalDatums& datums);

/// phi_erf sampled at the bin edges.
CcdfTable tabulate_erf(const MomentSummary& m, const BinSpec& bins);

/// Bin-centre mean and standard deviation of the table's density. Throws
/// Error unless the probability mass sums to 1 within 1e-6.
MomentSummary moments(const CcdfTable& table);

/// Linear interpolation between left-edge values; 1 below the first edge,
/// 0 from the upper edge on (the value past the last bin is taken as 0).
double eval_phi(const CcdfTable& table, double xi_hat);

/// CSV with "# method=", "# n_windows=", "# bin_width_m=" (plus tide range
/// and moments when available) and header `bin_left_m,phi,pdf_per_m`.
void write_phi_csv(std::ostream& out, const CcdfTable& table,
                   const std::optional<MomentSummary>& moments = std::nullopt);
CcdfTable read_phi_csv(std::istream& in);

} // namespace tidehaz
