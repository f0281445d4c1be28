#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "tidehaz/ccdf.hpp"
#include "tidehaz/error.hpp"
#include "tidehaz/hazard.hpp"
#include "test_support.hpp"

using namespace tidehaz;
using tidehaz::testing::sinusoid;

namespace {

const TidalDatums kCrescent{-1.13, -0.75, 0.0, 0.77, 0.97, -1.83, 1.50, 0.638};

double arcsine_phi(double xi, double a) { return std::acos(xi / a) / std::numbers::pi; }

// Standard normal upper tail by composite Simpson's rule.
double normal_tail(double x) {
  const int n = 20000;
  const double hi = x + 12.0;
  const double h = (hi - x) / n;
  auto f = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); };
  double s = f(x) + f(hi);
  for (int i = 1; i < n; ++i) s += f(x + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// max_{t in [0, T_G]} (x(t0 + t) - (A - eta(t))) for every stop, by direct scan.
std::vector<std::uint64_t> naive_g_counts(const TideRecord& rec, double amp,
                                          const GMethodParams& gp, const BinSpec& bins) {
  const auto eta = proxy_pattern(amp, gp).eta_m;
  const auto x = rec.levels();
  const auto tg = static_cast<std::size_t>(gp.duration_minutes);
  std::vector<std::uint64_t> counts(bins.count, 0);
  for (std::size_t t0 = 0; t0 + tg < x.size(); ++t0) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t <= tg; ++t) best = std::max(best, x[t0 + t] - (amp - eta[t]));
    for (std::size_t j = 0; j < bins.count; ++j)
      if (best > bins.edge(j)) ++counts[j];
  }
  return counts;
}

std::string csv_of(const CcdfTable& t) {
  std::ostringstream out;
  write_phi_csv(out, t);
  return out.str();
}

} // namespace

TEST_CASE("BinSpec covering and locate") {
  const auto b = BinSpec::covering(-1.234, 1.5, 0.01);
  CHECK(b.lower() <= -1.234);
  CHECK(b.upper() >= 1.5);
  CHECK(b.first_index == -124);
  CHECK(b.locate(-2.0) == -1);
  CHECK(b.locate(b.edge(0)) == -1);
  CHECK(b.locate(b.edge(5)) == 4);  // a value on a right edge belongs to that bin
  CHECK(b.locate(b.edge(5) + 1e-9) == 5);
  CHECK(b.locate(99.0) == static_cast<std::ptrdiff_t>(b.count) - 1);
  CHECK_THROWS_AS(BinSpec::covering(1.0, 0.0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(BinSpec::covering(0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("default bins span the offset-extended record range") {
  const auto rec = sinusoid(1.0, 2.0);
  const auto b = default_bins(rec, 1.45);
  CHECK(b.lower() <= -1.0 - 1.45 - 0.01);
  CHECK(b.upper() >= 1.0 + 0.01);
  CHECK(b.width == 0.01);
}

TEST_CASE("CcdfTable invariants") {
  BinSpec b{0, 0.5, 3};
  const auto t = CcdfTable::from_counts(b, {4, 2, 1}, 4, "x");
  CHECK(t.phi() == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(t.pdf()[0] == doctest::Approx(1.0));
  CHECK(t.pdf()[2] == doctest::Approx(0.5));
  CHECK_THROWS_AS(CcdfTable::from_phi(b, {0.5, 0.6, 0.1}, 0, "x"), Error);
  CHECK_THROWS_AS(CcdfTable::from_phi(b, {1.5, 0.6, 0.1}, 0, "x"), Error);
  CHECK_THROWS_AS(CcdfTable::from_phi(b, {1.0, 0.6}, 0, "x"), Error);
}

TEST_CASE("phi0 of a sinusoid is the arcsine occupation law") {
  const auto rec = sinusoid(1.0, 35.0);
  const auto t = build_phi0(rec, default_bins(rec));
  CHECK(t.phi().front() == 1.0);
  CHECK(eval_phi(t, 0.0) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(eval_phi(t, 0.5) - 1.0 / 3.0) < 0.01);
  for (double xi : {-0.9, -0.5, 0.0, 0.5, 0.9}) CHECK(std::abs(eval_phi(t, xi) - arcsine_phi(xi, 1.0)) < 0.01);
  CHECK(eval_phi(t, rec.max()) < 1e-4);
  for (std::size_t j = 0; j < t.bins().count; ++j)
    if (t.bins().edge(j) >= rec.max()) CHECK(t.exceed_counts()[j] == 0);
  const auto m = moments(t);
  CHECK(std::abs(m.xi0) < 0.01);
  CHECK(m.sigma == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("phi_dt") {
  const auto rec = sinusoid(1.0, 35.0);
  const auto bins = default_bins(rec);
  const auto p0 = build_phi0(rec, bins);
  const auto d0 = build_phi_dt(rec, 0, bins);
  CHECK(d0.phi() == p0.phi());
  CHECK(d0.exceed_counts() == p0.exceed_counts());

  const auto d72 = build_phi_dt(rec, 72, bins);
  CHECK(std::abs(eval_phi(d72, 0.5) - (1.0 / 3.0 + 72.0 / 720.0)) < 0.01);

  const auto full = build_phi_dt(rec, 720, bins);
  for (std::size_t j = 0; j < bins.count; ++j)
    if (bins.edge(j) < 1.0) CHECK(full.phi()[j] == 1.0);

  CHECK_THROWS_AS(build_phi_dt(rec, -1, bins), std::invalid_argument);
  CHECK_THROWS_AS(build_phi_dt(rec, static_cast<int>(rec.size()), bins), Error);
}

TEST_CASE("phi_dt matches a naive window scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rec = testing::random_record(rng, 500 + rng() % 2000);
    const auto bins = default_bins(rec);
    const int dt = static_cast<int>(rng() % 200);
    const auto t = build_phi_dt(rec, dt, bins);
    CHECK(t.exceed_counts() == testing::naive_dt_counts(rec.levels(), dt, bins));
    CHECK(t.n_windows() == rec.size() - static_cast<std::size_t>(dt));
  }
}

TEST_CASE("phi_dt is nondecreasing in dt and tends to phi_infinity") {
  const auto rec = testing::mixed_tide(20.0);
  const auto bins = default_bins(rec);
  std::vector<double> prev(bins.count, 0.0);
  for (int dt : {0, 10, 60, 180, 720, 1500, 5000}) {
    const auto t = build_phi_dt(rec, dt, bins);
    for (std::size_t j = 0; j < bins.count; ++j) CHECK(t.phi()[j] >= prev[j]);
    prev = t.phi();
  }
  TidalDatums d = kCrescent;
  d.xi_highest = rec.max();
  const auto one = build_phi_dt(rec, static_cast<int>(rec.size()) - 1, bins);
  CHECK(one.n_windows() == 1);
  for (std::size_t j = 0; j < bins.count; ++j)
    CHECK(one.phi()[j] == phi_infinity(bins.edge(j), d));
}

TEST_CASE("phi_infinity") {
  CHECK(phi_infinity(1.49, kCrescent) == 1.0);
  CHECK(phi_infinity(1.50, kCrescent) == 0.0);
  CHECK(phi_infinity(-10.0, kCrescent) == 1.0);
}

TEST_CASE("phi_pattern equals the brute-force oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto rec = testing::random_record(rng, 800 + rng() % 4000);
    const auto p = testing::random_pattern(rng, 1 + static_cast<int>(rng() % 8), 400);
    const auto bins = default_bins(rec, p.max_offset());
    CHECK(build_phi_pattern(rec, p, bins).exceed_counts() ==
          oracle_phi(rec, p, bins).exceed_counts());
  }
  const auto rec = testing::mixed_tide(5.0);
  const auto p = aasze02_pattern();
  const auto bins = default_bins(rec, p.max_offset());
  CHECK(build_phi_pattern(rec, p, bins).exceed_counts() ==
        oracle_phi(rec, p, bins).exceed_counts());
}

TEST_CASE("single zero-offset wave is the dt method") {
  const auto rec = testing::mixed_tide(6.0);
  const auto bins = default_bins(rec);
  for (int w : {0, 1, 24, 180}) {
    const auto pat = build_phi_pattern(rec, WavePattern({{0, w}}, {0.0}), bins);
    const auto dt = build_phi_dt(rec, w, bins);
    CHECK(pat.exceed_counts() == dt.exceed_counts());
    CHECK(pat.phi() == dt.phi());
  }
}

TEST_CASE("pattern with dominated side waves") {
  const auto rec = testing::mixed_tide(6.0);
  const WavePattern p({{0, 30}, {60, 84}, {120, 150}}, {10.0, 0.0, 10.0});
  const auto bins = default_bins(rec, p.max_offset());
  const auto pat = build_phi_pattern(rec, p, bins);
  // Same stops, tallest wave only.
  const auto x = rec.levels();
  std::vector<std::uint64_t> counts(bins.count, 0);
  for (std::size_t t0 = 0; t0 + 150 < x.size(); ++t0) {
    double m = x[t0 + 60];
    for (std::size_t t = 60; t <= 84; ++t) m = std::max(m, x[t0 + t]);
    for (std::size_t j = 0; j < bins.count; ++j)
      if (m > bins.edge(j)) ++counts[j];
  }
  CHECK(pat.exceed_counts() == counts);
  const auto dt = build_phi_dt(rec, 24, bins);
  for (std::size_t j = 0; j < bins.count; ++j) CHECK(std::abs(pat.phi()[j] - dt.phi()[j]) < 0.02);
}

TEST_CASE("pattern bounded by dt over its duration and its tallest wave") {
  const auto rec = testing::mixed_tide(8.0);
  const auto p = aasze02_pattern();
  const auto bins = default_bins(rec, p.max_offset());
  const auto pat = build_phi_pattern(rec, p, bins);
  const auto upper = build_phi_dt(rec, p.duration(), bins);
  const auto lower = build_phi_dt(rec, 24, bins);
  const double slack = static_cast<double>(p.duration()) / static_cast<double>(pat.n_windows());
  for (std::size_t j = 0; j < bins.count; ++j) {
    CHECK(pat.phi()[j] <= upper.phi()[j]);
    CHECK(pat.phi()[j] >= lower.phi()[j] - slack);
  }
}

TEST_CASE("pattern longer than record") {
  const auto rec = testing::sinusoid(1.0, 1.0);
  CHECK_THROWS_AS(build_phi_pattern(rec, WavePattern({{0, 2000}}, {0.0}), default_bins(rec)),
                  Error);
  CHECK_THROWS_AS(oracle_phi(testing::sinusoid(1.0, 7.0), aasze02_pattern(),
                             default_bins(testing::sinusoid(1.0, 7.0), 1.45)),
                  Error);
}

TEST_CASE("g_direct equals a direct scan") {
  GMethodParams gp;
  gp.duration_minutes = 300;
  gp.efold_minutes = 120.0;
  const auto rec = testing::mixed_tide(2.0);
  for (double amp : {0.4, 1.5, 3.92}) {
    const auto bins = default_bins(rec);
    const auto t = build_phi_g_direct(rec, amp, gp, bins);
    CHECK(t.exceed_counts() == naive_g_counts(rec, amp, gp, bins));
    CHECK(t.n_windows() == rec.size() - 300);
  }
}

TEST_CASE("g_direct dominates phi0 on the same stops") {
  const auto rec = testing::mixed_tide(30.0);
  const GMethodParams gp;
  const auto bins = default_bins(rec);
  const auto g = build_phi_g_direct(rec, 20.0, gp, bins);
  const auto x = rec.levels();
  const TideRecord head(0, std::vector<double>(x.begin(), x.end() - gp.duration_minutes));
  const auto p0 = build_phi0(head, bins);
  for (std::size_t j = 0; j < bins.count; ++j) CHECK(g.phi()[j] >= p0.phi()[j]);
}

TEST_CASE("G-method regression with Crescent City constants") {
  const GMethodParams gp;
  auto m = mofjeld_params(3.92, gp, kCrescent);
  CHECK(std::abs(m.xi0 - 0.45) <= 0.01);
  CHECK(std::abs(m.sigma - 0.34) <= 0.01);
  m = mofjeld_params(14.18, gp, kCrescent);
  CHECK(std::abs(m.xi0 - 0.09) <= 0.01);
  CHECK(std::abs(m.sigma - 0.56) <= 0.01);
  m = mofjeld_params(0.30, gp, kCrescent);
  CHECK(std::abs(m.xi0 - 0.93) <= 0.01);
  CHECK(std::abs(m.sigma - 0.20) <= 0.01);

  GMethodParams unit = gp;
  unit.C = 1.0;
  unit.alpha = 3.7;
  CHECK(mofjeld_params(1e-12, unit, kCrescent).xi0 == doctest::Approx(kCrescent.xi_mhhw));
  CHECK_THROWS_AS(mofjeld_params(0.0, gp, kCrescent), std::invalid_argument);
}

TEST_CASE("phi_erf") {
  const MomentSummary std_normal{0.0, 1.0};
  CHECK(phi_erf(0.0, std_normal) == 0.5);
  CHECK(std::abs(phi_erf(1.0, std_normal) - 0.15866) < 1e-4);
  CHECK(std::abs(phi_erf(1.0, std_normal) - normal_tail(1.0)) < 1e-9);
  CHECK(std::abs(phi_erf(-0.3, std_normal) - normal_tail(-0.3)) < 1e-9);
  CHECK(phi_erf(std::numeric_limits<double>::infinity(), std_normal) == 0.0);
  const MomentSummary m{0.45, 0.34};
  for (double x : {0.0, 0.1, 0.5, 1.7})
    CHECK(phi_erf(m.xi0 - x, m) + phi_erf(m.xi0 + x, m) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(phi_erf(0.0, MomentSummary{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("moments recover a discretized Gaussian") {
  for (auto m : {MomentSummary{0.3, 0.5}, MomentSummary{-0.2, 0.12}, MomentSummary{0.45, 0.34}}) {
    const auto bins = BinSpec::covering(m.xi0 - 9 * m.sigma, m.xi0 + 9 * m.sigma, 0.01);
    const auto got = moments(tabulate_erf(m, bins));
    CHECK(std::abs(got.xi0 - m.xi0) <= 0.01);
    CHECK(std::abs(got.sigma - m.sigma) <= 0.01);
  }
}

TEST_CASE("moments of a point mass") {
  const auto t = CcdfTable::from_counts(BinSpec{3, 0.2, 2}, {10, 0}, 10, "point");
  const auto m = moments(t);
  CHECK(m.xi0 == doctest::Approx(0.7));
  CHECK(m.sigma == 0.0);
}

TEST_CASE("moments reject tables without full mass") {
  const auto t = CcdfTable::from_phi(BinSpec{0, 0.1, 2}, {0.5, 0.2}, 0, "partial");
  CHECK_THROWS_AS(moments(t), Error);
}

TEST_CASE("eval_phi") {
  const auto t = CcdfTable::from_phi(BinSpec{0, 0.1, 3}, {1.0, 0.6, 0.2}, 0, "x");
  CHECK(eval_phi(t, 0.1) == 0.6);
  CHECK(eval_phi(t, -5.0) == 1.0);
  CHECK(eval_phi(t, 0.15) == doctest::Approx(0.4));
  CHECK(eval_phi(t, 0.25) == doctest::Approx(0.1));
  CHECK(eval_phi(t, 0.3) == doctest::Approx(0.0));
  CHECK(eval_phi(t, 0.31) == 0.0);
  CHECK(eval_phi(t, std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(eval_phi(t, -std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THROWS_AS(eval_phi(t, std::nan("")), std::invalid_argument);
}

TEST_CASE("phi CSV round trip") {
  const auto rec = testing::mixed_tide(3.0);
  const auto t = build_phi_dt(rec, 60, default_bins(rec));
  const auto text = csv_of(t);
  std::istringstream in(text);
  const auto back = read_phi_csv(in);
  CHECK(back.bins() == t.bins());
  CHECK(back.method_tag() == "dt:60");
  CHECK(back.n_windows() == t.n_windows());
  REQUIRE(back.xi_highest.has_value());
  CHECK(*back.xi_highest == doctest::Approx(rec.max()).epsilon(1e-6));
  std::istringstream again(csv_of(back));
  CHECK(csv_of(read_phi_csv(again)) == csv_of(back));
  for (std::size_t j = 0; j < t.bins().count; ++j)
    CHECK(std::abs(back.phi()[j] - t.phi()[j]) <= 5e-7);

  std::istringstream bad("# bin_width_m=0.01\nbin_left_m,phi,pdf_per_m\n0.00,1.0,0\n0.05,0.5,0\n");
  CHECK_THROWS_AS(read_phi_csv(bad), Error);
}

TEST_CASE("builders are identical for any worker count") {
  const auto rec = testing::mixed_tide(25.0);
  const auto p = aasze02_pattern();
  const auto bins = default_bins(rec, p.max_offset());
  GMethodParams gp;
  const auto ref_p0 = csv_of(build_phi0(rec, bins, {1}));
  const auto ref_dt = csv_of(build_phi_dt(rec, 120, bins, {1}));
  const auto ref_pat = csv_of(build_phi_pattern(rec, p, bins, {1}));
  const auto ref_g = csv_of(build_phi_g_direct(rec, 3.92, gp, bins, {1}));
  for (unsigned threads : {2u, 3u, 8u}) {
    CHECK(csv_of(build_phi0(rec, bins, {threads})) == ref_p0);
    CHECK(csv_of(build_phi_dt(rec, 120, bins, {threads})) == ref_dt);
    CHECK(csv_of(build_phi_pattern(rec, p, bins, {threads})) == ref_pat);
    CHECK(csv_of(build_phi_g_direct(rec, 3.92, gp, bins, {threads})) == ref_g);
  }
}
