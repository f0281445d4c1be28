#include "tidehaz/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "tidehaz/ccdf.hpp"
#include "tidehaz/error.hpp"
#include "tidehaz/hazard.hpp"
#include "tidehaz/pattern.hpp"
#include "tidehaz/preset.hpp"
#include "tidehaz/tide_record.hpp"

#ifndef TIDEHAZ_VERSION
#define TIDEHAZ_VERSION "0.0.0"
#endif

namespace tidehaz::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256: digest init failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

fs::path manifest_path(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

namespace {

std::string fixed6(double v) {
  auto s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path));
  return in;
}

// Collects what a command read and wrote so a manifest can be emitted.
struct RunLog {
  std::vector<std::string> args;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  json parameters = json::object();
};

// Writes `body` to `path`, or to `out` when path is empty.
void emit(const std::string& path, const std::string& body, std::ostream& out, RunLog& log) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write {}", path));
  f << body;
  f.close();
  if (!f) throw Error(fmt::format("write failed: {}", path));
  log.outputs.push_back(path);
}

void write_manifest(const RunLog& log, const std::string& command) {
  if (log.outputs.empty()) return;
  json m;
  m["tool"] = "tidehaz";
  m["version"] = TIDEHAZ_VERSION;
  m["command"] = command;
  m["args"] = log.args;
  m["parameters"] = log.parameters;
  json inputs = json::array();
  for (const auto& p : log.inputs) inputs.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  m["inputs"] = inputs;
  json outputs = json::array();
  for (const auto& p : log.outputs) outputs.push_back({{"path", p}, {"sha256", sha256_file(p)}});
  m["outputs"] = outputs;
  std::ofstream f(manifest_path(log.outputs.front()), std::ios::binary);
  if (!f) throw Error("cannot write manifest");
  f << m.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Shared option groups

struct TideOptions {
  std::string path;
  int gap_max = 120;
  bool fail_on_gap = false;
  bool rebase = false;
  double min_tidal_days = 40.0;
  std::string source_kind = "unknown";

  void add(CLI::App* cmd) {
    cmd->add_option("--gap-max", gap_max, "Fill gaps up to this many minutes")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_flag("--fail-on-gap", fail_on_gap, "Reject any gap");
    cmd->add_flag("--rebase", rebase, "Shift the record to zero mean");
    cmd->add_option("--min-tidal-days", min_tidal_days, "Minimum record length")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--tide-kind", source_kind, "Tide product: observed, predicted, synthetic")
        ->capture_default_str();
  }

  TideRecord load(RunLog& log, std::ostream& err) const {
    IngestOptions opt;
    opt.gap_policy = fail_on_gap ? GapPolicy::fail() : GapPolicy::interpolate(gap_max);
    opt.min_samples = static_cast<std::size_t>(std::ceil(min_tidal_days * kTidalDayMinutes));
    opt.rebase_to_mean = rebase;
    opt.source_kind = source_kind;
    opt.site_label = fs::path(path).stem().string();
    auto in = open_in(path);
    auto record = ingest_tide_csv(in, opt);
    log.inputs.push_back(path);
    log.parameters["tide"] = {{"gap_max_minutes", gap_max},
                              {"fail_on_gap", fail_on_gap},
                              {"rebase", rebase},
                              {"min_tidal_days", min_tidal_days},
                              {"tide_kind", source_kind}};
    if (auto w = msl_reference_warning(record)) err << "warning: " << *w << '\n';
    return record;
  }
};

SitePreset load_preset_logged(const std::string& name, RunLog& log) {
  auto preset = load_preset(name);
  log.parameters["preset"] = preset.name;
  return preset;
}

Exec exec_of(unsigned threads) { return Exec{threads}; }

// ---------------------------------------------------------------------------
// Commands

struct DatumsArgs {
  TideOptions tide;
  std::string output;
};

void cmd_datums(const DatumsArgs& a, RunLog& log, std::ostream& out, std::ostream& err) {
  const auto record = a.tide.load(log, err);
  std::ostringstream body;
  write_datum_csv(body, compute_datums(record));
  emit(a.output, body.str(), out, log);
}

struct PhiArgs {
  TideOptions tide;
  std::string method = "phi0";
  std::optional<int> dt_min;
  std::string pattern_file;
  std::optional<double> amp;
  std::string preset;
  std::string source;
  double bin_width = 0.01;
  std::string output;
};

void cmd_phi(const PhiArgs& a, unsigned threads, RunLog& log, std::ostream& out,
             std::ostream& err) {
  const Exec exec = exec_of(threads);
  log.parameters["method"] = a.method;
  log.parameters["bin_width_m"] = a.bin_width;
  std::optional<SitePreset> preset;
  if (!a.preset.empty()) preset = load_preset_logged(a.preset, log);

  std::optional<CcdfTable> table;
  std::optional<MomentSummary> summary;
  if (a.method == "g_erf") {
    if (!a.amp) throw Error("--method g_erf needs --amp");
    if (!preset) throw Error("--method g_erf needs --preset");
    log.parameters["amp_m"] = *a.amp;
    const auto m = mofjeld_params(*a.amp, preset->g_params, preset->datums);
    const auto bins = BinSpec::covering(m.xi0 - 6.0 * m.sigma, m.xi0 + 6.0 * m.sigma, a.bin_width);
    table = tabulate_erf(m, bins);
    table->xi_lowest = preset->datums.xi_lowest;
    table->xi_highest = preset->datums.xi_highest;
    summary = m;
  } else {
    if (a.tide.path.empty()) throw Error(fmt::format("--method {} needs a tide CSV", a.method));
    const auto record = a.tide.load(log, err);
    if (a.method == "phi0") {
      table = build_phi0(record, default_bins(record, 0.0, a.bin_width), exec);
    } else if (a.method == "dt") {
      int dt = 0;
      if (a.dt_min) {
        dt = *a.dt_min;
      } else if (preset && !a.source.empty()) {
        dt = recommended_dt_minutes(*preset, a.source);
        log.parameters["source"] = a.source;
      } else {
        throw Error("--method dt needs --dt-min (or --preset with --source)");
      }
      log.parameters["dt_minutes"] = dt;
      table = build_phi_dt(record, dt, default_bins(record, 0.0, a.bin_width), exec);
    } else if (a.method == "pattern") {
      if (a.pattern_file.empty()) throw Error("--method pattern needs --pattern-file");
      auto in = open_in(a.pattern_file);
      const auto pattern = read_pattern_json(in);
      log.inputs.push_back(a.pattern_file);
      table = build_phi_pattern(record, pattern, default_bins(record, pattern.max_offset(), a.bin_width),
                                exec);
    } else if (a.method == "g_direct") {
      if (!a.amp) throw Error("--method g_direct needs --amp");
      const GMethodParams gp = preset ? preset->g_params : GMethodParams{};
      log.parameters["amp_m"] = *a.amp;
      table = build_phi_g_direct(record, *a.amp, gp, default_bins(record, 0.0, a.bin_width), exec);
    } else {
      throw Error(fmt::format("unknown method '{}'", a.method));
    }
    summary = moments(*table);
  }

  std::ostringstream body;
  write_phi_csv(body, *table, summary);
  emit(a.output, body.str(), out, log);
  if (!a.output.empty())
    out << "xi0_m=" << fixed6(summary->xi0) << " sigma_m=" << fixed6(summary->sigma) << '\n';
}

struct HazardArgs {
  std::string ztable;
  std::string phi_file;
  bool g_method = false;
  std::string preset;
  std::string mode = "infimum";
  std::string z_mode = "piecewise";
  std::optional<double> anchor_stage;
  std::optional<std::string> extrapolation;
  std::optional<double> domain_lo;
  std::optional<double> domain_hi;
  std::string output;
};

void cmd_hazard(const HazardArgs& a, unsigned threads, RunLog& log, std::ostream& out,
                std::ostream& err) {
  if (a.phi_file.empty() == !a.g_method)
    throw Error("hazard needs exactly one of --phi or --g");
  std::optional<SitePreset> preset;
  if (!a.preset.empty()) preset = load_preset_logged(a.preset, log);
  if (a.g_method && !preset) throw Error("--g needs --preset");

  auto zin = open_in(a.ztable);
  const auto table = read_ztable_csv(zin);
  log.inputs.push_back(a.ztable);

  std::optional<CcdfTable> phi;
  if (!a.phi_file.empty()) {
    auto pin = open_in(a.phi_file);
    phi = read_phi_csv(pin);
    log.inputs.push_back(a.phi_file);
  }

  ResponseConfig config;
  config.mode = a.z_mode == "slope_one" ? ResponseMode::slope_one : ResponseMode::piecewise_linear;
  if (a.z_mode != "slope_one" && a.z_mode != "piecewise")
    throw Error(fmt::format("unknown --z-mode '{}'", a.z_mode));
  if (a.extrapolation) {
    if (*a.extrapolation == "clamp") config.extrapolation = Extrapolation::clamp;
    else if (*a.extrapolation == "linear") config.extrapolation = Extrapolation::linear_continuation;
    else throw Error(fmt::format("unknown --extrapolation '{}'", *a.extrapolation));
  }

  // Evaluation domain: explicit flags, else the phi table's record range,
  // else the preset's observed extremes, else the Z-table stages.
  double lo = *std::min_element(table.stages.begin(), table.stages.end());
  double hi = *std::max_element(table.stages.begin(), table.stages.end());
  if (phi && phi->xi_lowest && phi->xi_highest) {
    lo = *phi->xi_lowest;
    hi = *phi->xi_highest;
  } else if (preset) {
    lo = preset->datums.xi_lowest;
    hi = preset->datums.xi_highest;
  }
  if (a.domain_lo) lo = *a.domain_lo;
  if (a.domain_hi) hi = *a.domain_hi;
  config.domain = {lo, hi};

  const double smin = *std::min_element(table.stages.begin(), table.stages.end());
  const double smax = *std::max_element(table.stages.begin(), table.stages.end());
  if (config.mode == ResponseMode::piecewise_linear && (smin > lo || smax < hi)) {
    err << fmt::format("warning: Z-table stages [{}, {}] do not cover the stage domain [{}, {}]",
                       fixed6(smin), fixed6(smax), fixed6(lo), fixed6(hi));
    if (!a.extrapolation) {
      config.extrapolation = Extrapolation::clamp;
      err << "; Z is clamped outside the simulated stages";
    }
    err << '\n';
  }

  const double anchor =
      a.anchor_stage ? *a.anchor_stage : (preset ? preset->datums.xi_mhhw : 0.0);
  const auto responses = responses_from_ztable(table, config, anchor);
  const ExceedanceLevels levels = preset ? preset->levels : ExceedanceLevels::standard();

  log.parameters["mode"] = a.mode;
  log.parameters["z_mode"] = a.z_mode;
  log.parameters["extrapolation"] =
      config.extrapolation == Extrapolation::clamp ? "clamp" : "linear";
  log.parameters["domain_m"] = {lo, hi};
  if (config.mode == ResponseMode::slope_one) log.parameters["anchor_stage_m"] = anchor;

  GridField field;
  if (a.g_method) {
    log.parameters["method"] = "g_erf";
    field.levels = levels;
    field.method_tag = "g_erf";
    for (const auto& sr : responses) {
      auto curve = g_method_curve(sr.location(), sr.eval(preset->datums.xi_mhhw), levels,
                                  preset->g_params, preset->datums);
      field.locations.push_back(curve.location);
      field.probabilities.push_back(std::move(curve.probabilities));
    }
  } else {
    PsiMode mode = PsiMode::infimum;
    if (a.mode == "interval_sum") mode = PsiMode::interval_sum;
    else if (a.mode != "infimum") throw Error(fmt::format("unknown --mode '{}'", a.mode));
    field = hazard_grid(responses, *phi, levels, mode, exec_of(threads));
  }
  std::ostringstream body;
  write_hazard_csv(body, field);
  emit(a.output, body.str(), out, log);
}

struct CompareArgs {
  std::string a;
  std::string b;
  std::string output;
  std::string abs_output;
};

void cmd_compare(const CompareArgs& a, RunLog& log, std::ostream& out) {
  auto ia = open_in(a.a);
  auto ib = open_in(a.b);
  const auto fa = read_hazard_csv(ia);
  const auto fb = read_hazard_csv(ib);
  log.inputs = {a.a, a.b};
  const auto summary = compare_fields(fa, fb);
  std::ostringstream body;
  write_diff_csv(body, summary);
  emit(a.output, body.str(), out, log);
  if (!a.abs_output.empty()) {
    std::ostringstream abs_body;
    write_diff_csv(abs_body, summary, true);
    emit(a.abs_output, abs_body.str(), out, log);
  }
  if (!a.output.empty())
    out << "max_diff=" << fixed6(summary.max_diff) << " min_diff=" << fixed6(summary.min_diff)
        << '\n';
}

struct SynthArgs {
  std::string constituents;
  double days = 35.0;
  double msl_offset = 0.0;
  std::string start = "2000-01-01T00:00:00Z";
  std::string output;
};

void cmd_synth(const SynthArgs& a, RunLog& log, std::ostream& out) {
  auto in = open_in(a.constituents);
  const auto cs = read_constituents_csv(in);
  log.inputs.push_back(a.constituents);
  log.parameters["days"] = a.days;
  log.parameters["msl_offset_m"] = a.msl_offset;
  log.parameters["start"] = a.start;
  const auto record = synthesize_tide(cs, a.days, a.msl_offset, parse_iso8601_utc(a.start));
  std::ostringstream body;
  write_tide_csv(body, record);
  emit(a.output, body.str(), out, log);
}

struct ExtractArgs {
  std::string gauge;
  std::optional<double> proxy_amp;
  std::string preset;
  double threshold = 0.25;
  double min_gap = 5.0;
  std::string width_rule = "half_amplitude";
  double margin = 0.1;
  std::string source;
  std::string output;
};

void cmd_extract(const ExtractArgs& a, RunLog& log, std::ostream& out, std::ostream& err) {
  if (a.gauge.empty() == !a.proxy_amp)
    throw Error("pattern-extract needs exactly one of a gauge CSV or --proxy-amp");
  ExtractParams params;
  params.threshold_fraction = a.threshold;
  params.min_gap_minutes = a.min_gap;
  if (a.width_rule == "threshold_run") params.width_rule = ExtractParams::WidthRule::threshold_run;
  else if (a.width_rule != "half_amplitude")
    throw Error(fmt::format("unknown --width-rule '{}'", a.width_rule));

  GaugeSeries gauge;
  if (a.proxy_amp) {
    GMethodParams gp;
    if (!a.preset.empty()) gp = load_preset_logged(a.preset, log).g_params;
    gauge = proxy_pattern(*a.proxy_amp, gp);
    log.parameters["proxy_amp_m"] = *a.proxy_amp;
  } else {
    auto in = open_in(a.gauge);
    gauge = read_gauge_csv(in);
    log.inputs.push_back(a.gauge);
  }
  log.parameters["threshold_fraction"] = a.threshold;
  log.parameters["min_gap_minutes"] = a.min_gap;
  log.parameters["width_rule"] = a.width_rule;
  log.parameters["margin_m"] = a.margin;

  auto extracted = extract_pattern(gauge, params);
  std::string source = a.source;
  if (source.empty()) source = a.proxy_amp ? "proxy" : fs::path(a.gauge).stem().string();
  const WavePattern pattern(extracted.intervals(), extracted.offsets(), source);
  std::ostringstream body;
  write_pattern_json(body, pattern);
  emit(a.output, body.str(), out, log);
  const int dt = recommend_dt(pattern, a.margin);
  (a.output.empty() ? err : out)
      << "waves=" << pattern.size() << " duration_min=" << pattern.duration()
      << " recommended_dt_min=" << dt << '\n';
}

int cmd_replay(const std::string& manifest_file, std::ostream& out, std::ostream& err) {
  auto in = open_in(manifest_file);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(fmt::format("manifest: {}", e.what()));
  }
  for (const auto& item : m.at("inputs")) {
    const auto path = item.at("path").get<std::string>();
    if (sha256_file(path) != item.at("sha256").get<std::string>())
      throw Error(fmt::format("replay: input {} changed since the manifest was written", path));
  }
  if (m.at("version").get<std::string>() != TIDEHAZ_VERSION)
    err << "warning: manifest written by tidehaz " << m.at("version").get<std::string>() << '\n';
  const auto args = m.at("args").get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") throw Error("replay: manifest replays itself");
  std::ostringstream sink;
  const int rc = run(args, sink, err);
  if (rc != 0) return rc;
  int mismatches = 0;
  for (const auto& item : m.at("outputs")) {
    const auto path = item.at("path").get<std::string>();
    if (sha256_file(path) != item.at("sha256").get<std::string>()) {
      err << "replay: output " << path << " differs from the manifest\n";
      ++mismatches;
    }
  }
  if (mismatches != 0) return 3;
  out << "replay ok: " << m.at("outputs").size() << " output(s) reproduced\n";
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tidal-stage uncertainty for tsunami hazard curves", "tidehaz"};
  app.set_version_flag("--version", std::string(TIDEHAZ_VERSION));
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  DatumsArgs datums;
  auto* c_datums = app.add_subcommand("datums", "Tidal datums of a tide record");
  c_datums->add_option("tide", datums.tide.path, "Tide CSV (timestamp,level_m)")->required();
  datums.tide.add(c_datums);
  c_datums->add_option("-o,--output", datums.output, "Datum CSV (default: stdout)");

  PhiArgs phi;
  auto* c_phi = app.add_subcommand("phi", "Tide CCDF table");
  c_phi->add_option("tide", phi.tide.path, "Tide CSV");
  phi.tide.add(c_phi);
  c_phi->add_option("--method", phi.method, "phi0, dt, pattern, g_direct or g_erf")
      ->check(CLI::IsMember({"phi0", "dt", "pattern", "g_direct", "g_erf"}))
      ->capture_default_str();
  c_phi->add_option("--dt-min", phi.dt_min, "Window length in minutes")->check(CLI::NonNegativeNumber);
  c_phi->add_option("--pattern-file", phi.pattern_file, "Wave pattern JSON");
  c_phi->add_option("--amp", phi.amp, "G-method amplitude A_G, m");
  c_phi->add_option("--preset", phi.preset, "Site preset name or JSON path");
  c_phi->add_option("--source", phi.source, "Source name for the preset's recommended window");
  c_phi->add_option("--bin-width", phi.bin_width, "Bin width, m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_phi->add_option("-o,--output", phi.output, "Phi CSV (default: stdout)");

  HazardArgs hz;
  auto* c_hz = app.add_subcommand("hazard", "Hazard curves from a Z-table");
  c_hz->add_option("--ztable", hz.ztable, "Z-table CSV")->required();
  c_hz->add_option("--phi", hz.phi_file, "Phi CSV");
  c_hz->add_flag("--g", hz.g_method, "Closed-form G method instead of a phi table");
  c_hz->add_option("--preset", hz.preset, "Site preset name or JSON path");
  c_hz->add_option("--mode", hz.mode, "infimum or interval_sum")->capture_default_str();
  c_hz->add_option("--z-mode", hz.z_mode, "piecewise or slope_one")->capture_default_str();
  c_hz->add_option("--anchor-stage", hz.anchor_stage, "Stage column used by slope_one");
  c_hz->add_option("--extrapolation", hz.extrapolation, "clamp or linear");
  c_hz->add_option("--domain-lo", hz.domain_lo, "Lowest stage, m");
  c_hz->add_option("--domain-hi", hz.domain_hi, "Highest stage, m");
  c_hz->add_option("-o,--output", hz.output, "Hazard CSV (default: stdout)");

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "Difference of two hazard CSVs");
  c_cmp->add_option("a", cmp.a, "Hazard CSV")->required();
  c_cmp->add_option("b", cmp.b, "Hazard CSV")->required();
  c_cmp->add_option("-o,--output", cmp.output, "Diff CSV (default: stdout)");
  c_cmp->add_option("--abs-out", cmp.abs_output, "Also write |a - b|");

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synth", "Harmonic tide synthesis");
  c_syn->add_option("constituents", syn.constituents, "Constituent CSV")->required();
  c_syn->add_option("--days", syn.days, "Duration in days")->capture_default_str();
  c_syn->add_option("--msl-offset", syn.msl_offset, "Constant added to every level, m");
  c_syn->add_option("--start", syn.start, "First timestamp (UTC)")->capture_default_str();
  c_syn->add_option("-o,--output", syn.output, "Tide CSV (default: stdout)");

  ExtractArgs ex;
  auto* c_ex = app.add_subcommand("pattern-extract", "Square-wave pattern from a gauge series");
  c_ex->add_option("gauge", ex.gauge, "Gauge CSV (t_min,eta_m)");
  c_ex->add_option("--proxy-amp", ex.proxy_amp, "Use the decaying proxy tsunami of this amplitude");
  c_ex->add_option("--preset", ex.preset, "Preset supplying proxy parameters");
  c_ex->add_option("--threshold", ex.threshold, "Crest threshold as a fraction of the peak")
      ->capture_default_str();
  c_ex->add_option("--min-gap", ex.min_gap, "Merge crests closer than this, minutes")
      ->capture_default_str();
  c_ex->add_option("--width-rule", ex.width_rule, "half_amplitude or threshold_run")
      ->capture_default_str();
  c_ex->add_option("--margin", ex.margin, "Offset margin for the recommended window, m")
      ->capture_default_str();
  c_ex->add_option("--source", ex.source, "Source label stored in the pattern");
  c_ex->add_option("-o,--output", ex.output, "Pattern JSON (default: stdout)");

  std::string manifest_file;
  auto* c_replay = app.add_subcommand("replay", "Re-run a manifest and verify its outputs");
  c_replay->add_option("manifest", manifest_file, "Manifest JSON")->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  RunLog log;
  log.args = args;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "replay") return cmd_replay(manifest_file, out, err);
    if (name == "datums") cmd_datums(datums, log, out, err);
    else if (name == "phi") cmd_phi(phi, threads, log, out, err);
    else if (name == "hazard") cmd_hazard(hz, threads, log, out, err);
    else if (name == "compare") cmd_compare(cmp, log, out);
    else if (name == "synth") cmd_synth(syn, log, out);
    else if (name == "pattern-extract") cmd_extract(ex, log, out, err);
    write_manifest(log, name);
  } catch (const std::exception& e) {
    err << "tidehaz: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace tidehaz::cli
