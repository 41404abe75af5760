#include "wetperc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "wetperc/analytics.hpp"
#include "wetperc/hexlattice.hpp"
#include "wetperc/montecarlo.hpp"
#include "wetperc/realization_io.hpp"
#include "wetperc/rng.hpp"

namespace wetperc::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

class EmptyWorkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  double lambda_r = kUnset;
  double r_r = kUnset;
  double r_f = kUnset;
  double lambda_f = kUnset;
  double lambda_c = lambda_c_unit();
  double width = 2000.0;
  double height = 2000.0;
  std::size_t iterations = 200;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double margin = kUnset;
  std::string direction = "either";
  std::uint64_t station_cap = 1'000'000;
  std::string format;
  std::string out;

  std::optional<std::string> grid;
  std::string vary = "lambda-r";
  std::optional<std::string> rr_values;
  std::string plan_mode = "star";
  std::string hex_mode = "sub";
  std::size_t trials = 4000;
};

struct Result {
  std::string body;
  json parameters;
  int code = kExitOk;
};

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

double need(double v, const char* flag) {
  if (std::isnan(v)) throw ParameterError(std::string("missing required option ") + flag);
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ParameterError(std::string("invalid number in ") + what + ": '" + tok + "'");
    }
    values.push_back(v);
  }
  return values;
}

SpanDirection parse_direction(const std::string& s) {
  if (s == "horizontal") return SpanDirection::kHorizontal;
  if (s == "vertical") return SpanDirection::kVertical;
  if (s == "both") return SpanDirection::kBoth;
  return SpanDirection::kEither;
}

SimConfig make_config(const Options& o) {
  SimConfig c;
  c.region = Region(o.width, o.height);
  c.iterations = o.iterations;
  c.master_seed = o.seed;
  c.workers = o.workers;
  c.station_cap = o.station_cap;
  if (!std::isnan(o.margin) || o.direction != "either") {
    // An unset margin still means "r_r"; it is filled in per parameter point.
    c.rule = SpanningRule{o.margin, parse_direction(o.direction)};
  }
  return c;
}

SimConfig config_for(SimConfig c, double r_r) {
  if (c.rule && std::isnan(c.rule->margin)) c.rule->margin = r_r;
  return c;
}

json config_json(const Options& o) {
  return {{"width_m", o.width},         {"height_m", o.height},
          {"iterations", o.iterations}, {"master_seed", o.seed},
          {"workers", o.workers},       {"margin_m", std::isnan(o.margin) ? json("r_r") : json(o.margin)},
          {"direction", o.direction},   {"station_cap", o.station_cap}};
}

json device_json(const DeviceParams& p) {
  return {{"lambda_r_per_m2", p.lambda_r}, {"r_r_m", p.r_r}, {"r_f_m", p.r_f}};
}

json density_json(const ThresholdedDensity& d) {
  return {{"value_per_m2", opt_json(d.value)},
          {"defined", d.defined()},
          {"lambda_r_threshold_per_m2", d.lambda_r_threshold},
          {"note", d.note()}};
}

json bounds_json(const BoundsReport& b) {
  return {{"lower", density_json(b.lower)},
          {"upper", density_json(b.upper)},
          {"inner_city", density_json(b.inner_city)},
          {"gilbert", {{"value_per_m2", b.gilbert}, {"defined", true}, {"note", "defined"}}},
          {"star", density_json(b.star)}};
}

json estimate_json(const EstimateResult& r) {
  json j = {{"mean", r.mean},
            {"std_error", r.std_error},
            {"samples", r.samples},
            {"censored", r.censored}};
  if (r.ci) {
    j["ci95"] = {{"low", r.ci->low},
                 {"high", r.ci->high},
                 {"method", r.ci_method == CiMethod::kClopperPearson ? "clopper-pearson" : "normal"}};
    j["ci_note"] = "defined";
  } else {
    j["ci95"] = nullptr;
    j["ci_note"] = "undefined: fewer than two samples";
  }
  return j;
}

std::string csv_preamble(const char* command) {
  return "# schema_version=" + std::to_string(kSchemaVersion) + " command=" + command + "\n";
}

// ---------------------------------------------------------------------------

Result cmd_bounds(const Options& o) {
  const DeviceParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"), need(o.r_f, "--rf")};
  const BoundsReport b = bounds_report(p, o.lambda_c);
  Result res;
  res.parameters = {{"params", device_json(p)}, {"lambda_c", o.lambda_c}};
  const std::string fmt = o.format.empty() ? "text" : o.format;
  const std::vector<std::pair<const char*, ThresholdedDensity>> rows = {
      {"lower", b.lower},
      {"star", b.star},
      {"upper", b.upper},
      {"inner_city", b.inner_city},
      {"gilbert", ThresholdedDensity{b.gilbert, 0.0}}};
  if (fmt == "json") {
    json j = {{"schema_version", kSchemaVersion}, {"command", "bounds"}};
    j.update(res.parameters);
    j["densities"] = bounds_json(b);
    res.body = j.dump(2) + "\n";
  } else if (fmt == "csv") {
    std::string s = csv_preamble("bounds");
    s += "quantity,value_per_m2,defined,lambda_r_threshold_per_m2\n";
    for (const auto& [name, d] : rows) {
      s += std::string(name) + "," + num(d.value) + "," + (d.defined() ? "true" : "false") + "," +
           num(d.lambda_r_threshold) + "\n";
    }
    res.body = s;
  } else {
    std::ostringstream os;
    os << "lambda_r = " << p.lambda_r << " /m^2, r_r = " << p.r_r << " m, r_f = " << p.r_f
       << " m, lambda_c = " << o.lambda_c << "\n";
    for (const auto& [name, d] : rows) {
      os << std::left << std::setw(12) << name << std::setw(26)
         << (d.value ? num(*d.value) : std::string("-")) << d.note() << "\n";
    }
    res.body = os.str();
  }
  return res;
}

std::vector<double> default_theta_grid(const BoundsReport& b) {
  double lo = 0.25 * b.gilbert;
  double hi = 4.0 * b.gilbert;
  if (b.lower.defined() && b.upper.defined()) {
    lo = 0.5 * *b.lower.value;
    hi = 1.5 * *b.upper.value;
  }
  constexpr int kPoints = 20;
  std::vector<double> grid{0.0};
  for (int i = 0; i < kPoints; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (kPoints - 1)));
  }
  return grid;
}

Result cmd_simulate(const Options& o) {
  const DeviceParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"), need(o.r_f, "--rf")};
  const BoundsReport b = bounds_report(p, o.lambda_c);
  std::vector<double> grid = o.grid ? parse_list(*o.grid, "--grid") : default_theta_grid(b);
  if (grid.empty()) throw EmptyWorkError("the lambda_f grid is empty");
  const SimConfig config = config_for(make_config(o), p.r_r);
  const auto curve = percolation_curve(p, grid, config);

  Result res;
  res.parameters = {{"params", device_json(p)},
                    {"lambda_c", o.lambda_c},
                    {"config", config_json(o)},
                    {"lambda_f_grid_per_m2", grid}};
  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      json row = estimate_json(curve[i]);
      row["lambda_f_per_m2"] = grid[i];
      rows.push_back(std::move(row));
    }
    json j = {{"schema_version", kSchemaVersion}, {"command", "simulate"}};
    j.update(res.parameters);
    j["reference"] = bounds_json(b);
    j["rows"] = std::move(rows);
    res.body = j.dump(2) + "\n";
  } else {
    std::string s = csv_preamble("simulate");
    s += "lambda_f_per_m2,theta_hat,std_error,ci_low,ci_high,lambda_f_L_per_m2,lambda_f_U_per_m2,"
         "lambda_f_GD_per_m2,lambda_f_star_per_m2\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& r = curve[i];
      s += num(grid[i]) + "," + num(r.mean) + "," + num(r.std_error) + "," +
           (r.ci ? num(r.ci->low) : "") + "," + (r.ci ? num(r.ci->high) : "") + "," +
           num(b.lower.value) + "," + num(b.upper.value) + "," + num(b.gilbert) + "," +
           num(b.star.value) + "\n";
    }
    res.body = s;
  }
  return res;
}

Result cmd_critical(const Options& o) {
  const DeviceParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"), need(o.r_f, "--rf")};
  const SimConfig config = config_for(make_config(o), p.r_r);
  const EstimateResult r = estimate_critical_density(p, config);
  Result res;
  res.parameters = {{"params", device_json(p)}, {"lambda_c", o.lambda_c}, {"config", config_json(o)}};
  json j = {{"schema_version", kSchemaVersion}, {"command", "critical"}};
  j.update(res.parameters);
  j["critical_density_per_m2"] = estimate_json(r);
  j["reference"] = bounds_json(bounds_report(p, o.lambda_c));
  res.body = j.dump(2) + "\n";
  return res;
}

Result cmd_sweep(const Options& o) {
  std::vector<double> grid = o.grid ? parse_list(*o.grid, "--grid") : std::vector<double>{};
  if (grid.empty()) throw EmptyWorkError("the sweep grid is empty");
  const SimConfig base = make_config(o);
  std::vector<SweepRow> rows;
  Result res;
  if (o.vary == "r-f") {
    std::vector<double> rr = o.rr_values ? parse_list(*o.rr_values, "--rr-values")
                                         : std::vector<double>{need(o.r_r, "--rr")};
    if (rr.empty()) throw EmptyWorkError("the r_r list is empty");
    const double lambda_r = need(o.lambda_r, "--lambda-r");
    for (double r_r : rr) {
      const auto part = sweep_r_f(grid, std::span<const double>(&r_r, 1), lambda_r,
                                  config_for(base, r_r), o.lambda_c);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    res.parameters = {{"vary", "r-f"}, {"r_f_grid_m", grid}, {"r_r_values_m", rr},
                      {"lambda_r_per_m2", lambda_r}};
  } else {
    const double r_r = need(o.r_r, "--rr");
    const double r_f = need(o.r_f, "--rf");
    rows = sweep_lambda_r(grid, r_r, r_f, config_for(base, r_r), o.lambda_c);
    res.parameters = {{"vary", "lambda-r"}, {"lambda_r_grid_per_m2", grid}, {"r_r_m", r_r},
                      {"r_f_m", r_f}};
  }
  res.parameters["lambda_c"] = o.lambda_c;
  res.parameters["config"] = config_json(o);

  const std::string fmt = o.format.empty() ? "csv" : o.format;
  if (fmt == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      arr.push_back({{"params", device_json(row.params)},
                     {"simulated_per_m2", estimate_json(row.simulated)},
                     {"bounds", bounds_json(row.bounds)}});
    }
    json j = {{"schema_version", kSchemaVersion}, {"command", "sweep"}};
    j.update(res.parameters);
    j["rows"] = std::move(arr);
    res.body = j.dump(2) + "\n";
  } else {
    std::string s = csv_preamble("sweep");
    s += "lambda_r_per_m2,r_r_m,r_f_m,simulated_per_m2,std_error_per_m2,samples,censored,"
         "lambda_f_L_per_m2,lambda_f_U_per_m2,lambda_f_IC_per_m2,lambda_f_GD_per_m2,"
         "lambda_f_star_per_m2\n";
    for (const auto& row : rows) {
      const auto& b = row.bounds;
      s += num(row.params.lambda_r) + "," + num(row.params.r_r) + "," + num(row.params.r_f) + "," +
           num(row.simulated.mean) + "," + num(row.simulated.std_error) + "," +
           std::to_string(row.simulated.samples) + "," + std::to_string(row.simulated.censored) +
           "," + num(b.lower.value) + "," + num(b.upper.value) + "," + num(b.inner_city.value) +
           "," + num(b.gilbert) + "," + num(b.star.value) + "\n";
    }
    res.body = s;
  }
  return res;
}

Result cmd_plan(const Options& o) {
  const DeviceParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"), need(o.r_f, "--rf")};
  PlanningMode mode = PlanningMode::kApproxStar;
  if (o.plan_mode == "gilbert") mode = PlanningMode::kGilbert;
  if (o.plan_mode == "conservative") mode = PlanningMode::kConservative;
  const Region region(o.width, o.height);
  const CapexReport c = capex_report(p, region, mode, o.lambda_c);
  Result res;
  res.parameters = {{"params", device_json(p)},
                    {"lambda_c", o.lambda_c},
                    {"mode", to_string(mode)},
                    {"width_m", o.width},
                    {"height_m", o.height}};
  const std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt == "json") {
    json j = {{"schema_version", kSchemaVersion}, {"command", "plan"}};
    j.update(res.parameters);
    j["planned_density_per_m2"] = c.planned_density;
    j["full_coverage_density_per_m2"] = c.full_coverage_density;
    j["density_ratio"] = c.density_ratio;
    j["stations_saved"] = c.stations_saved;
    j["uncovered_probability"] = c.uncovered_probability;
    res.body = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "mode: " << to_string(mode) << "\n"
       << "planned station density:       " << num(c.planned_density) << " /m^2\n"
       << "full-coverage station density: " << num(c.full_coverage_density) << " /m^2\n"
       << "density ratio:                 " << num(c.density_ratio) << "\n"
       << "stations saved on " << o.width << " x " << o.height
       << " m: " << num(c.stations_saved) << "\n"
       << "probability a point is uncovered: " << num(c.uncovered_probability) << "\n";
    res.body = os.str();
  }
  return res;
}

Result cmd_hexcheck(const Options& o) {
  const NetworkParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"),
                        need(o.lambda_f, "--lambda-f"), need(o.r_f, "--rf")};
  validate(p);
  const FaceMode mode = o.hex_mode == "super" ? FaceMode::kSupercritical : FaceMode::kSubcritical;
  if (o.trials < 1) throw ParameterError("trials must be at least 1");
  const auto est = estimate_face_probability(mode, p, o.trials, o.seed);
  const double side = mode == FaceMode::kSubcritical ? p.r_r : p.r_r / std::sqrt(13.0);
  const auto adj = adjacent_connectivity_check(side);

  // One realization over the window: face percolation next to graph spanning.
  const Region region(o.width, o.height);
  const PointSet devices = sample_ppp(p.lambda_r, region, derive_seed(o.seed, 0, Stream::kDevices));
  const PointSet stations =
      sample_ppp(p.lambda_f, region, derive_seed(o.seed, 0, Stream::kStations));
  const HexLattice lattice = mode == FaceMode::kSubcritical
                                 ? HexLattice::subcritical(p.r_r, region)
                                 : HexLattice::supercritical(p.r_r, region);
  const FaceClassification cls =
      mode == FaceMode::kSubcritical
          ? classify_subcritical(lattice, devices, stations, p.r_r, p.r_f)
          : classify_supercritical(lattice, devices, stations, p.r_f);
  const SpanningRule rule{std::isnan(o.margin) ? p.r_r : o.margin, parse_direction(o.direction)};
  const bool faces = face_percolation(lattice, cls, rule);
  const WcRgg g = build_wc_rgg(devices, stations, p.r_r, p.r_f);
  const bool graph = spans(connected_components(g), region, rule);

  Result res;
  res.parameters = {{"mode", o.hex_mode},
                    {"lambda_r_per_m2", p.lambda_r},
                    {"r_r_m", p.r_r},
                    {"lambda_f_per_m2", p.lambda_f},
                    {"r_f_m", p.r_f},
                    {"trials", o.trials},
                    {"master_seed", o.seed},
                    {"width_m", o.width},
                    {"height_m", o.height}};
  const bool ok = est.dominates() && adj.ok;
  res.code = ok ? kExitOk : kExitStatistical;
  const char* quantity = mode == FaceMode::kSubcritical ? "p_inactive" : "p_active";
  const std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt == "json") {
    json j = {{"schema_version", kSchemaVersion}, {"command", "hexcheck"}};
    j.update(res.parameters);
    j["face_probability"] = {{"quantity", quantity},   {"empirical", est.empirical},
                             {"std_error", est.std_error}, {"bound", est.bound},
                             {"z", est.z},             {"dominates", est.dominates()}};
    j["adjacent_max_distance"] = {{"sampled_m", adj.sampled_max},
                                  {"expected_m", adj.expected},
                                  {"relative_error", adj.relative_error},
                                  {"ok", adj.ok}};
    j["window"] = {{"faces", lattice.face_count()},
                   {"face_percolates", faces},
                   {"graph_spans", graph}};
    j["ok"] = ok;
    res.body = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "check,empirical,std_error,bound,z,ok\n"
       << quantity << "," << num(est.empirical) << "," << num(est.std_error) << ","
       << num(est.bound) << "," << num(est.z) << "," << (est.dominates() ? "true" : "false")
       << "\n"
       << "adjacent_max_distance_m," << num(adj.sampled_max) << ",," << num(adj.expected) << ","
       << num(adj.relative_error) << "," << (adj.ok ? "true" : "false") << "\n"
       << "window: " << lattice.face_count() << " faces, face percolation "
       << (faces ? "yes" : "no") << ", graph spans " << (graph ? "yes" : "no") << "\n";
    res.body = os.str();
  }
  return res;
}

Result cmd_dump(const Options& o) {
  const NetworkParams p{need(o.lambda_r, "--lambda-r"), need(o.r_r, "--rr"),
                        need(o.lambda_f, "--lambda-f"), need(o.r_f, "--rf")};
  validate(p);
  const Region region(o.width, o.height);
  const WcRgg g =
      build_wc_rgg(sample_ppp(p.lambda_r, region, derive_seed(o.seed, 0, Stream::kDevices)),
                   sample_ppp(p.lambda_f, region, derive_seed(o.seed, 0, Stream::kStations)),
                   p.r_r, p.r_f);
  Result res;
  res.parameters = {{"lambda_r_per_m2", p.lambda_r}, {"r_r_m", p.r_r},
                    {"lambda_f_per_m2", p.lambda_f}, {"r_f_m", p.r_f},
                    {"width_m", o.width},           {"height_m", o.height},
                    {"master_seed", o.seed}};
  res.body = realization_to_json(g, region).dump(1) + "\n";
  return res;
}

void write_outputs(const std::string& command, const std::vector<std::string>& args,
                   const Options& o, const Result& r, double seconds) {
  {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + o.out);
    f << r.body;
  }
  json manifest = {{"schema_version", kSchemaVersion},
                   {"command", command},
                   {"arguments", args},
                   {"parameters", r.parameters},
                   {"master_seed", o.seed},
                   {"tool_version", WETPERC_VERSION},
                   {"wall_clock_seconds", seconds},
                   {"outputs", {o.out}}};
  std::ofstream m(o.out + ".manifest.json", std::ios::binary);
  if (!m) throw std::runtime_error("cannot open manifest file " + o.out + ".manifest.json");
  m << manifest.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical energy-station density for RF-powered IoE percolation", "wetperc"};
  app.set_config("--config", "", "TOML/INI file of option values; flags override it");
  app.set_version_flag("--version", WETPERC_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option("--lambda-r", o.lambda_r, "device density (per m^2)");
  app.add_option("--rr", o.r_r, "device-to-device range r_r (m)");
  app.add_option("--rf", o.r_f, "energy-station WET radius r_f (m)");
  app.add_option("--lambda-f", o.lambda_f, "energy-station density (per m^2)");
  app.add_option("--lambda-c", o.lambda_c, "unit-radius Gilbert critical density")
      ->capture_default_str();
  app.add_option("--width", o.width, "window width (m)")->capture_default_str();
  app.add_option("--height", o.height, "window height (m)")->capture_default_str();
  app.add_option("--iterations", o.iterations, "Monte-Carlo realizations")->capture_default_str();
  app.add_option("--seed", o.seed, "master seed")->envname("WETPERC_SEED")->capture_default_str();
  app.add_option("--workers", o.workers, "worker threads (0 = all cores); results do not depend on it")
      ->capture_default_str();
  app.add_option("--margin", o.margin, "spanning strip width (m); default r_r");
  app.add_option("--direction", o.direction, "spanning direction")
      ->check(CLI::IsMember({"either", "horizontal", "vertical", "both"}))
      ->capture_default_str();
  app.add_option("--station-cap", o.station_cap, "insertion cap per realization")
      ->capture_default_str();
  app.add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--out", o.out, "write output here plus <file>.manifest.json");

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds and approximations");
  auto* simulate = app.add_subcommand("simulate", "spanning probability over a lambda_f grid");
  simulate->add_option("--grid", o.grid, "comma-separated lambda_f values (per m^2)");
  auto* critical = app.add_subcommand("critical", "mean per-realization critical station density");
  auto* sweep = app.add_subcommand("sweep", "critical density and bounds over a parameter grid");
  sweep->add_option("--vary", o.vary, "swept parameter")
      ->check(CLI::IsMember({"lambda-r", "r-f"}))
      ->capture_default_str();
  sweep->add_option("--grid", o.grid, "comma-separated values of the swept parameter");
  sweep->add_option("--rr-values", o.rr_values, "comma-separated r_r values for --vary r-f");
  auto* plan = app.add_subcommand("plan", "deployment cost against full coverage");
  plan->add_option("--mode", o.plan_mode, "planned density formula")
      ->check(CLI::IsMember({"star", "gilbert", "conservative"}))
      ->capture_default_str();
  auto* hexcheck = app.add_subcommand("hexcheck", "hexagonal-lattice face checks");
  hexcheck->add_option("--mode", o.hex_mode, "lattice regime")
      ->check(CLI::IsMember({"sub", "super"}))
      ->capture_default_str();
  hexcheck->add_option("--trials", o.trials, "single-face trials")->capture_default_str();
  auto* dump = app.add_subcommand("dump", "write one realization as JSON");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameter;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    Result r;
    if (bounds->parsed()) {
      command = "bounds";
      r = cmd_bounds(o);
    } else if (simulate->parsed()) {
      command = "simulate";
      r = cmd_simulate(o);
    } else if (critical->parsed()) {
      command = "critical";
      r = cmd_critical(o);
    } else if (sweep->parsed()) {
      command = "sweep";
      r = cmd_sweep(o);
    } else if (plan->parsed()) {
      command = "plan";
      r = cmd_plan(o);
    } else if (hexcheck->parsed()) {
      command = "hexcheck";
      r = cmd_hexcheck(o);
    } else if (dump->parsed()) {
      command = "dump";
      r = cmd_dump(o);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.out.empty()) {
      out << r.body;
    } else {
      write_outputs(command, args, o, r, seconds);
    }
    if (r.code == kExitStatistical) err << "error: a statistical check failed\n";
    return r.code;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const EmptyWorkError& e) {
    err << "error: " << e.what() << "\n";
    return kExitEmptyWork;
  } catch (const CensoringError& e) {
    err << "error: " << e.what() << " (" << e.partial().censored << " of "
        << e.partial().censored + e.partial().samples << " censored)\n";
    return kExitStatistical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wetperc::cli
