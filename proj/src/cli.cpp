#include "radialqc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "radialqc/distortion.hpp"
#include "radialqc/errors.hpp"
#include "radialqc/powermap.hpp"
#include "radialqc/table.hpp"
#include "radialqc/uqrmap.hpp"
#include "radialqc/verify.hpp"
#include "radialqc/zoom.hpp"

namespace radialqc::cli {

namespace {

constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

/// Raised when a command ran but an asserted invariant failed.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw DomainError("output format must be csv or json, got '" + s + "'");
}

json config_json(const RunConfig& c) {
  return json{{"K", c.K}, {"dimension", c.dimension}, {"depth", c.depth},
              {"grid_points", c.grid_points}, {"tol", c.tol}};
}

// Options every subcommand accepts; flags override the config file.
struct CommonOptions {
  std::string config_path;
  double K = 0.0;
  int dimension = 0;
  std::size_t depth = 0;
  std::size_t grid_points = 0;
  double tol = 0.0;
  std::string format;
  std::string output;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "JSON config file");
    overrides.emplace_back(app.add_option("--K", K, "Distortion parameter K > 1"),
                           [this](RunConfig& c) { c.K = K; });
    overrides.emplace_back(app.add_option("--d,--dimension", dimension, "Dimension d >= 2"),
                           [this](RunConfig& c) { c.dimension = dimension; });
    overrides.emplace_back(app.add_option("--depth", depth, "Cached breakpoint depth"),
                           [this](RunConfig& c) { c.depth = depth; });
    overrides.emplace_back(app.add_option("--grid-points", grid_points, "Points per radial grid"),
                           [this](RunConfig& c) { c.grid_points = grid_points; });
    overrides.emplace_back(app.add_option("--tol", tol, "Assertion tolerance (log2, absolute)"),
                           [this](RunConfig& c) { c.tol = tol; });
    overrides.emplace_back(app.add_option("--format", format, "csv or json"),
                           [this](RunConfig& c) { c.format = parse_format(format); });
    overrides.emplace_back(app.add_option("-o,--output", output, "Output path, '-' for stdout"),
                           [this](RunConfig& c) { c.output_path = output; });
  }

  RunConfig resolve() const {
    RunConfig config;
    if (!config_path.empty()) config = load_config_file(config_path, config);
    for (const auto& [opt, apply] : overrides) {
      if (opt->count() > 0) apply(config);
    }
    validate(config);
    return config;
  }
};

// Radii given either linearly (--r) or as log2 values (--log2-r).
std::vector<LogRadius> collect_radii(const std::vector<double>& linear, const std::vector<double>& log2s,
                                     const char* what) {
  std::vector<LogRadius> out;
  for (const double r : linear) {
    if (!(r > 0.0 && r <= 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1]");
    out.push_back(LogRadius::from_radius(r));
  }
  for (const double v : log2s) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " log2 value must be finite");
    out.push_back(LogRadius::from_log2(v));
  }
  return out;
}

LogRadius single_radius(const std::vector<double>& linear, const std::vector<double>& log2s, const char* what) {
  const auto all = collect_radii(linear, log2s, what);
  if (all.size() != 1) throw DomainError(std::string("exactly one value of ") + what + " is required");
  return all.front();
}

double linear_of(LogRadius x) { return x.is_origin() ? 0.0 : x.radius(); }

class Emitter {
 public:
  Emitter(const RunConfig& config, std::ostream& out) : config_(config), out_(&out) {
    if (config.output_path != "-") {
      file_ = std::make_unique<std::ofstream>(config.output_path);
      if (!*file_) throw DomainError("cannot open output file '" + config.output_path + "'");
      out_ = file_.get();
    }
  }

  void table(std::string_view command, const Table& t, const json& summary = nullptr) {
    if (config_.format == OutputFormat::Csv) {
      write_csv(*out_, t);
      return;
    }
    json doc = {{"schema_version", kSchemaVersion}, {"command", command}, {"config", config_json(config_)},
                {"columns", t.columns}, {"rows", table_rows_json(t)}};
    if (!summary.is_null()) doc["summary"] = summary;
    *out_ << doc.dump(2) << '\n';
  }

  void document(const json& doc) { *out_ << doc.dump(2) << '\n'; }

 private:
  const RunConfig& config_;
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

std::pair<std::uint64_t, std::uint64_t> parse_n_range(const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos) {
      const auto n = std::stoull(spec);
      return {n, n};
    }
    return {std::stoull(spec.substr(0, dots)), std::stoull(spec.substr(dots + 2))};
  } catch (const std::logic_error&) {
    throw DomainError("bad --n range '" + spec + "', expected A..B");
  }
}

std::vector<LogRadius> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw DomainError("bad --grid '" + spec + "', expected LO:HI:COUNT in log2 r");
    }
  }
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2])) {
    throw DomainError("bad --grid '" + spec + "', expected LO:HI:COUNT in log2 r");
  }
  return log_uniform_grid(parts[0], parts[1], static_cast<std::size_t>(parts[2]));
}

// eval ------------------------------------------------------------------------

int cmd_eval(const RunConfig& config, const std::string& map_choice, const std::vector<LogRadius>& radii,
             Emitter& emit) {
  const auto f = build_standard_map(config.K, config.depth);
  std::function<LogRadius(LogRadius)> eval;
  if (map_choice == "f") {
    eval = [&](LogRadius x) { return f.eval_log(x); };
  } else if (map_choice == "h") {
    const ConjugatedMap h(f);
    eval = [h](LogRadius x) { return h.eval_log(x); };
  } else {
    const LimitFunction lf(parse_limit_kind(map_choice), f);
    eval = [lf](LogRadius x) { return lf.eval(x); };
  }
  Table t{{"r", "log2_r", "value", "log2_value"}, {}};
  for (const auto x : radii) {
    const auto y = eval(x);
    t.add_row({linear_of(x), x.log2(), linear_of(y), y.log2()});
  }
  emit.table("eval", t);
  return kExitOk;
}

// zoom ------------------------------------------------------------------------

template <class M>
int zoom_table(const RunConfig& config, const M& map, ZoomSequence seq, LimitKind limit,
               std::pair<std::uint64_t, std::uint64_t> n_range, const std::vector<LogRadius>& grid,
               bool assert_dev, Emitter& emit, std::ostream& err) {
  const auto& f = breakpoint_source(map);
  const LimitFunction lf(limit, f);
  if (n_range.first < 1 || n_range.second < n_range.first || n_range.second > f.depth() / 2) {
    throw DomainError("--n must satisfy 1 <= A <= B <= depth/2");
  }
  Table t{{"n", "log2_t", "log2_r", "rescaled", "matched_limit", "abs_dev"}, {}};
  double worst = 0.0;
  for (auto n = n_range.first; n <= n_range.second; ++n) {
    const auto scale = LogRadius::from_log2(zoom_scale(f, seq, n));
    for (const auto r : grid) {
      const double g = rescaled_eval(map, scale, r).log2();
      const double p = lf.eval(r).log2();
      const double dev = std::fabs(g - p);
      worst = std::max(worst, dev);
      t.add_row({static_cast<std::int64_t>(n), scale.log2(), r.log2(), g, p, dev});
    }
  }
  const bool pass = worst <= config.tol;
  const json summary = {{"limit", to_string(limit)}, {"sequence", to_string(seq)},
                        {"max_abs_dev", worst}, {"tol", config.tol}, {"within_tol", pass}};
  emit.table("zoom", t, summary);
  if (config.format == OutputFormat::Csv) {
    err << "max_abs_dev against " << to_string(limit) << ": " << format_double(worst) << '\n';
  }
  if (assert_dev && !pass) {
    throw AssertionFailure("zoom: max_abs_dev " + format_double(worst) + " exceeds tol " + format_double(config.tol));
  }
  return kExitOk;
}

// ivt -------------------------------------------------------------------------

template <class M>
int ivt_table(const RunConfig& config, const M& map, LogRadius r0, LogRadius lambda, std::uint64_t first_period,
              std::uint64_t periods, Emitter& emit) {
  Table t{{"period", "log2_t", "lambda", "achieved_value", "log2_achieved", "residual", "iterations"}, {}};
  for (std::uint64_t k = first_period; k < first_period + periods; ++k) {
    IvtSample s;
    try {
      s = ivt_sample(map, r0, lambda, config.tol, k);
    } catch (const NoBracketError& e) {
      throw AssertionFailure(e.what());
    }
    t.add_row({static_cast<std::int64_t>(k), s.scale.log2(), lambda.radius(), std::exp2(s.achieved), s.achieved,
               s.residual, static_cast<std::int64_t>(s.iterations)});
  }
  emit.table("ivt", t);
  return kExitOk;
}

// distortion ------------------------------------------------------------------

void add_report_row(Table& t, Cell label, const DistortionReport& r) {
  t.add_row({std::move(label), r.outer, r.inner, r.maximal});
}

// verify ----------------------------------------------------------------------

int cmd_verify(const RunConfig& config, Emitter& emit) {
  VerifyConfig vc;
  vc.K = config.K;
  vc.dimension = config.dimension;
  vc.depth = config.depth;
  vc.grid_points = config.grid_points;
  vc.tol = config.tol;
  const auto checks = run_verification(vc);
  json list = json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += c.pass ? 0 : 1;
    list.push_back({{"module", c.module}, {"name", c.name},
                    {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
                    {"relation", c.relation}, {"threshold", c.threshold}, {"pass", c.pass}});
  }
  json doc = {{"schema_version", kSchemaVersion}, {"command", "verify"}, {"config", config_json(config)},
              {"checks", list}, {"total", checks.size()}, {"failed", failed}, {"all_pass", failed == 0}};
  emit.document(doc);
  return failed == 0 ? kExitOk : kExitAssertion;
}

}  // namespace

void validate(const RunConfig& c) {
  if (!(c.K > 1.0) || !std::isfinite(c.K)) throw DomainError("K must be a finite real > 1");
  if (c.dimension < 2) throw DomainError("dimension must be >= 2");
  if (c.depth < 2) throw DomainError("depth must be >= 2");
  if (c.grid_points < 1) throw DomainError("grid_points must be >= 1");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw DomainError("tol must be a finite real > 0");
  if (c.output_path.empty()) throw DomainError("output path must not be empty");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw DomainError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "K") {
        base.K = value.get<double>();
      } else if (key == "dimension") {
        base.dimension = value.get<int>();
      } else if (key == "depth") {
        if (!value.is_number_unsigned()) throw DomainError("depth must be a positive integer");
        base.depth = value.get<std::size_t>();
      } else if (key == "grid_points") {
        if (!value.is_number_unsigned()) throw DomainError("grid_points must be a positive integer");
        base.grid_points = value.get<std::size_t>();
      } else if (key == "tol") {
        base.tol = value.get<double>();
      } else if (key == "output_format") {
        base.format = parse_format(value.get<std::string>());
      } else if (key == "output_path") {
        base.output_path = value.get<std::string>();
      } else {
        throw DomainError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw DomainError(std::string("config file has a field of the wrong type: ") + e.what());
  }
  validate(base);
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piecewise power-law radial quasiconformal maps: evaluation, zoom limits, distortion"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate f, h or a zoom limit at radii");
  CommonOptions eval_common;
  eval_common.attach(*eval_cmd);
  std::string eval_map;
  std::vector<double> eval_r, eval_log2_r;
  eval_cmd->add_option("--map", eval_map, "f, h, P1, P2, Q1 or Q2")
      ->required()
      ->check(CLI::IsMember({"f", "h", "P1", "P2", "Q1", "Q2"}));
  eval_cmd->add_option("--r", eval_r, "Radii in (0, 1]");
  eval_cmd->add_option("--log2-r", eval_log2_r, "Radii given by log2 r <= 0");

  // zoom
  auto* zoom_cmd = app.add_subcommand("zoom", "Compare rescaled zooms f(rt)/f(t) with a limit function");
  CommonOptions zoom_common;
  zoom_common.attach(*zoom_cmd);
  std::string zoom_map = "f", zoom_seq, zoom_n = "1..10", zoom_against, zoom_grid;
  bool zoom_no_assert = false;
  zoom_cmd->add_option("--map", zoom_map, "f or h")->check(CLI::IsMember({"f", "h"}));
  zoom_cmd->add_option("--seq", zoom_seq, "even (t = r_2n) or odd (t = r_2n-1)")
      ->required()
      ->check(CLI::IsMember({"even", "odd"}));
  zoom_cmd->add_option("--n", zoom_n, "Scale indices A..B");
  zoom_cmd->add_option("--against", zoom_against, "Limit to compare with (default: matched)")
      ->check(CLI::IsMember({"P1", "P2", "Q1", "Q2"}));
  zoom_cmd->add_option("--grid", zoom_grid, "LO:HI:COUNT, uniform in log2 r (default three periods)");
  zoom_cmd->add_flag("--no-assert", zoom_no_assert, "Report the deviation without failing");

  // ivt
  auto* ivt_cmd = app.add_subcommand("ivt", "Find zoom scales t with f(r0 t)/f(t) = lambda");
  CommonOptions ivt_common;
  ivt_common.attach(*ivt_cmd);
  std::string ivt_map = "f";
  std::vector<double> ivt_r0, ivt_log2_r0, ivt_lambda, ivt_log2_lambda;
  std::uint64_t ivt_period = 1, ivt_periods = 1;
  ivt_cmd->add_option("--map", ivt_map, "f or h")->check(CLI::IsMember({"f", "h"}));
  ivt_cmd->add_option("--r0", ivt_r0, "Sample radius r0");
  ivt_cmd->add_option("--log2-r0", ivt_log2_r0, "Sample radius as log2");
  ivt_cmd->add_option("--lambda", ivt_lambda, "Target value of the rescaled map at r0");
  ivt_cmd->add_option("--log2-lambda", ivt_log2_lambda, "Target value as log2");
  ivt_cmd->add_option("--period", ivt_period, "First period index k (scales in [r_2k, r_2k-1])");
  ivt_cmd->add_option("--periods", ivt_periods, "Number of consecutive periods");

  // iterate
  auto* iter_cmd = app.add_subcommand("iterate", "Orbit of a radius under h");
  CommonOptions iter_common;
  iter_common.attach(*iter_cmd);
  std::vector<double> iter_r, iter_log2_r;
  std::uint64_t iter_m = 10;
  iter_cmd->add_option("--r", iter_r, "Starting radius");
  iter_cmd->add_option("--log2-r", iter_log2_r, "Starting radius as log2");
  iter_cmd->add_option("--m", iter_m, "Number of iterates");

  // distortion
  auto* dist_cmd = app.add_subcommand("distortion", "Outer/inner/maximal distortion");
  CommonOptions dist_common;
  dist_common.attach(*dist_cmd);
  std::string dist_map = "f";
  std::optional<double> dist_alpha;
  std::uint64_t dist_iterates = 1;
  dist_cmd->add_option("--map", dist_map, "f or h")->check(CLI::IsMember({"f", "h"}));
  dist_cmd->add_option("--alpha", dist_alpha, "Single power r^alpha instead of f/h");
  dist_cmd->add_option("--iterates", dist_iterates, "For h: report h^1 .. h^m");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run every invariant and print a JSON report");
  CommonOptions verify_common;
  verify_common.attach(*verify_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) {
      const auto config = eval_common.resolve();
      const auto radii = collect_radii(eval_r, eval_log2_r, "--r");
      if (radii.empty()) throw DomainError("eval needs --r or --log2-r");
      Emitter emit(config, out);
      return cmd_eval(config, eval_map, radii, emit);
    }
    if (zoom_cmd->parsed()) {
      const auto config = zoom_common.resolve();
      const auto f = build_standard_map(config.K, config.depth);
      const auto seq = parse_zoom_sequence(zoom_seq);
      const auto grid = zoom_grid.empty() ? log_uniform_grid(-3.0 * f.period(), 0.0, config.grid_points)
                                          : parse_grid(zoom_grid);
      const auto range = parse_n_range(zoom_n);
      Emitter emit(config, out);
      if (zoom_map == "f") {
        const auto limit = zoom_against.empty() ? matched_limit_kind(f, seq) : parse_limit_kind(zoom_against);
        return zoom_table(config, f, seq, limit, range, grid, !zoom_no_assert, emit, err);
      }
      const ConjugatedMap h(f);
      const auto limit = zoom_against.empty() ? matched_limit_kind(h, seq) : parse_limit_kind(zoom_against);
      return zoom_table(config, h, seq, limit, range, grid, !zoom_no_assert, emit, err);
    }
    if (ivt_cmd->parsed()) {
      const auto config = ivt_common.resolve();
      const auto r0 = single_radius(ivt_r0, ivt_log2_r0, "--r0");
      const auto lambda = single_radius(ivt_lambda, ivt_log2_lambda, "--lambda");
      if (ivt_period < 1 || ivt_periods < 1) throw DomainError("--period and --periods must be >= 1");
      const auto f = build_standard_map(config.K, config.depth);
      Emitter emit(config, out);
      if (ivt_map == "f") return ivt_table(config, f, r0, lambda, ivt_period, ivt_periods, emit);
      return ivt_table(config, ConjugatedMap(f), r0, lambda, ivt_period, ivt_periods, emit);
    }
    if (iter_cmd->parsed()) {
      const auto config = iter_common.resolve();
      const auto x = single_radius(iter_r, iter_log2_r, "--r");
      const ConjugatedMap h(build_standard_map(config.K, config.depth));
      Table t{{"m", "log2_value", "value"}, {}};
      for (std::uint64_t m = 0; m <= iter_m; ++m) {
        const auto y = h.iterate(x, m);
        t.add_row({static_cast<std::int64_t>(m), y.log2(), linear_of(y)});
      }
      Emitter emit(config, out);
      emit.table("iterate", t);
      return kExitOk;
    }
    if (dist_cmd->parsed()) {
      const auto config = dist_common.resolve();
      const int d = config.dimension;
      Table t{{"m", "K_O", "K_I", "K_max"}, {}};
      if (dist_alpha) {
        add_report_row(t, std::string("sup"), max_distortion(RadialPower(*dist_alpha), d));
      } else if (dist_map == "f") {
        add_report_row(t, std::string("sup"), max_distortion(build_standard_map(config.K, config.depth), d));
      } else {
        if (dist_iterates < 1) throw DomainError("--iterates must be >= 1");
        const ConjugatedMap h(build_standard_map(config.K, config.depth));
        DistortionReport sup;
        std::int64_t m = 0;
        for (const auto& r : iterate_max_distortion(h, d, dist_iterates)) {
          add_report_row(t, ++m, r);
          sup.outer = std::max(sup.outer, r.outer);
          sup.inner = std::max(sup.inner, r.inner);
          sup.maximal = std::max(sup.maximal, r.maximal);
        }
        add_report_row(t, std::string("sup"), sup);
      }
      Emitter emit(config, out);
      emit.table("distortion", t);
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      auto config = verify_common.resolve();
      config.format = OutputFormat::Json;
      Emitter emit(config, out);
      return cmd_verify(config, emit);
    }
  } catch (const AssertionFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitUsage;
}

}  // namespace radialqc::cli
