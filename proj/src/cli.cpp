#include "superosc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "superosc/criteria.hpp"
#include "superosc/errors.hpp"
#include "superosc/scanner.hpp"
#include "superosc/wavenumber.hpp"

namespace superosc::cli {

using json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos) {
    throw std::invalid_argument("expected b1:b2, got '" + text + "'");
  }
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
      throw std::invalid_argument("bad number '" + std::string(s) + "' in '" + text + "'");
    }
    return v;
  };
  const std::string_view all(text);
  return {number(all.substr(0, colon)), number(all.substr(colon + 1))};
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::strtod(format_number(v).c_str(), nullptr);
}

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json interval_json(const Interval& iv) { return json::array({num(iv.b1()), num(iv.b2())}); }

json interval_json(const std::optional<Interval>& iv) { return iv ? interval_json(*iv) : json(nullptr); }

std::string csv_opt(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Superoscillating:
      return "superoscillating";
    case Verdict::NotSuperoscillating:
      return "not-superoscillating";
    case Verdict::Undefined:
      return "undefined";
  }
  return "undefined";
}

struct Options {
  std::string func;
  std::string mode = "sine";
  double c = 0.0;
  std::string interval;
  std::string window;
  double anchor = 0.0;
  std::string direction = "right";
  int max_points = 40;
  std::optional<int> stop_after_fails;
  bool max_points_given = false;
  double tol = 1e-10;
  int kmax = 4096;
  std::optional<double> step;
  double threshold = 0.5;
  std::string out;
  std::string range;
  int samples = 1000;
  bool deterministic = false;
};

CriterionMode parse_mode(const std::string& m) { return m == "cosine" ? CriterionMode::Cosine : CriterionMode::Sine; }

CriterionConfig criterion_config(const Options& o) {
  if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  if (o.kmax < 64) throw std::invalid_argument("--kmax must be >= 64");
  if (!(o.threshold > 0.0 && o.threshold < 1.0)) throw std::invalid_argument("--threshold must lie in (0, 1)");
  if (o.step && !(*o.step > 0.0)) throw std::invalid_argument("--step must be > 0");
  CriterionConfig cfg;
  cfg.quad_tol = o.tol;
  cfg.k_cap = o.kmax;
  cfg.threshold = o.threshold;
  return cfg;
}

// Decimal endpoints typed on the command line rarely hit a zero or extremum
// to 1e-9; move each one to the nearest admissible point within 1e-6 relative.
double snap(const BandlimitedFunction& f, CriterionMode mode, double c, double b) {
  const RootKind kind = mode == CriterionMode::Sine ? RootKind::Level : RootKind::Critical;
  return snap_endpoint(f, kind, c, b, 1e-6 * std::max(1.0, std::abs(b)));
}

Interval snapped_interval(const BandlimitedFunction& f, CriterionMode mode, double c, const std::string& text) {
  const auto [b1, b2] = parse_range(text);
  const Interval requested(b1, b2);
  return Interval(snap(f, mode, c, requested.b1()), snap(f, mode, c, requested.b2()));
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const auto f = compile(o.func);
  const CriterionMode mode = parse_mode(o.mode);
  const double c = mode == CriterionMode::Sine ? o.c : 0.0;
  const auto [r1, r2] = parse_range(o.interval);
  const Interval iv = snapped_interval(f, mode, c, o.interval);
  const QReport r = check_criterion(f, mode, c, iv, criterion_config(o));
  const LocalSpectrum& s = r.spectrum;

  if (o.out == "csv") {
    write_line(out, {"mode", "c", "b1", "b2", "k0", "q", "passes", "verdict", "k_max", "truncation_ratio"});
    write_line(out, {std::string(to_string(mode)), format_number(c), format_number(iv.b1()), format_number(iv.b2()),
                     std::to_string(r.k0), csv_opt(r.q), r.passes ? "true" : "false", verdict_name(r.verdict()),
                     std::to_string(s.k_max), format_number(s.truncation_ratio)});
    return 0;
  }
  json coeffs = json::array();
  for (double a : s.coefficients) coeffs.push_back(num(a));
  json j;
  j["command"] = "analyze";
  j["func"] = o.func;
  j["mode"] = to_string(mode);
  j["c"] = num(c);
  j["requested_interval"] = json::array({num(r1), num(r2)});
  j["interval"] = interval_json(iv);
  j["band_edge"] = num(f.band_edge());
  j["k0"] = r.k0;
  j["q"] = num(r.q);
  j["threshold"] = num(r.threshold);
  j["passes"] = r.passes;
  j["verdict"] = verdict_name(r.verdict());
  j["valid_endpoints"] = r.valid_endpoints;
  j["spectrum"] = {{"k_max", s.k_max},
                   {"first_index", mode == CriterionMode::Sine ? 1 : 0},
                   {"truncation_ratio", num(s.truncation_ratio)},
                   {"truncation_warning", s.truncation_warning},
                   {"endpoint_residuals", json::array({num(s.endpoint_residuals.first),
                                                       num(s.endpoint_residuals.second)})},
                   {"coefficients", coeffs}};
  out << j.dump(2) << '\n';
  return 0;
}

json profile_json(const ScanProfile& p) {
  json pts = json::array();
  for (const auto& pt : p.points) pts.push_back({{"b", num(pt.b)}, {"Q", num(pt.q)}, {"passes", pt.passes}});
  return {{"direction", to_string(p.direction)},
          {"stop_reason", to_string(p.stop_reason, p.stop_after_fails)},
          {"points", pts}};
}

int cmd_scan(const Options& o, std::ostream& out) {
  const auto f = compile(o.func);
  const CriterionMode mode = parse_mode(o.mode);
  const double c = mode == CriterionMode::Sine ? o.c : 0.0;
  if (o.max_points < 1) throw std::invalid_argument("--max-points must be >= 1");
  // An explicit --max-points asks for that many rows unless a stop rule is also given.
  const int stop_after_fails = o.stop_after_fails.value_or(o.max_points_given ? 0 : 2);
  if (stop_after_fails < 0) throw std::invalid_argument("--stop-after-fails must be >= 0");
  ScanOptions so;
  so.max_points = o.max_points;
  so.stop_after_fails = stop_after_fails;
  so.step = o.step;
  so.criterion = criterion_config(o);
  so.parallel = !o.deterministic;
  const double anchor = snap(f, mode, c, o.anchor);

  std::vector<ScanProfile> profiles;
  if (o.direction == "both") {
    auto [left, right] = scan_two_sided(f, anchor, mode, c, so);
    profiles = {left, right};
  } else {
    profiles.push_back(
        scan_profile(f, anchor, mode, c, o.direction == "left" ? Direction::Left : Direction::Right, so));
  }

  if (o.out == "json") {
    json j;
    j["command"] = "scan";
    j["func"] = o.func;
    j["mode"] = to_string(mode);
    j["c"] = num(c);
    j["anchor"] = num(anchor);
    j["band_edge"] = num(f.band_edge());
    j["stop_after_fails"] = stop_after_fails;
    json arr = json::array();
    for (const auto& p : profiles) arr.push_back(profile_json(p));
    j["profiles"] = arr;
    out << j.dump(2) << '\n';
    return 0;
  }
  const bool both = profiles.size() > 1;
  if (both) {
    write_line(out, {"direction", "b", "Q", "passes"});
  } else {
    write_line(out, {"b", "Q", "passes"});
  }
  for (const auto& p : profiles) {
    for (const auto& pt : p.points) {
      std::vector<std::string> row{format_number(pt.b), csv_opt(pt.q), pt.passes ? "true" : "false"};
      if (both) row.insert(row.begin(), to_string(p.direction));
      write_line(out, row);
    }
  }
  for (const auto& p : profiles) {
    out << "# " << to_string(p.direction) << " stop_reason=" << to_string(p.stop_reason, p.stop_after_fails) << '\n';
  }
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto f = compile(o.func);
  const CriterionMode mode = parse_mode(o.mode);
  const double c = mode == CriterionMode::Sine ? o.c : 0.0;
  const Interval target = snapped_interval(f, mode, c, o.interval);
  ClassifyOptions co;
  co.criterion = criterion_config(o);
  co.step = o.step;
  if (!o.window.empty()) {
    const auto [w1, w2] = parse_range(o.window);
    co.window = Interval(w1, w2);
  }
  const DefinitionVerdict v = classify_definition(f, target, mode, c, co);

  if (o.out == "csv") {
    write_line(out, {"superoscillating", "target_b1", "target_b2", "inner_b1", "inner_b2", "inner_q", "outer_b1",
                     "outer_b2", "outer_q", "window_b1", "window_b2"});
    auto ends = [](const std::optional<Interval>& iv) {
      return iv ? std::pair{format_number(iv->b1()), format_number(iv->b2())} : std::pair{std::string(), std::string()};
    };
    const auto [i1, i2] = ends(v.inner);
    const auto [o1, o2] = ends(v.outer);
    write_line(out, {v.superoscillating ? "true" : "false", format_number(target.b1()), format_number(target.b2()),
                     i1, i2, csv_opt(v.inner_q), o1, o2, csv_opt(v.outer_q), format_number(v.search_window.b1()),
                     format_number(v.search_window.b2())});
    return 0;
  }
  json j;
  j["command"] = "classify";
  j["func"] = o.func;
  j["mode"] = to_string(mode);
  j["c"] = num(v.c);
  j["target"] = interval_json(v.target);
  j["superoscillating"] = v.superoscillating;
  j["inner"] = interval_json(v.inner);
  j["inner_q"] = num(v.inner_q);
  j["outer"] = interval_json(v.outer);
  j["outer_q"] = num(v.outer_q);
  j["search_window"] = interval_json(v.search_window);
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_wavenumber(const Options& o, std::ostream& out) {
  const auto f = compile(o.func);
  if (!f.trig_polynomial()) {
    throw RepresentationError("'" + o.func + "' has no finite trigonometric-polynomial form");
  }
  if (o.samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const auto [r1, r2] = parse_range(o.range);
  const WavenumberReport r = wavenumber_report(*f.trig_polynomial(), Interval(r1, r2), o.samples);

  if (o.out == "json") {
    json pts = json::array();
    for (const auto& [x, k] : r.samples) pts.push_back({{"x", num(x)}, {"k", num(k)}});
    json j;
    j["command"] = "wavenumber";
    j["func"] = o.func;
    j["range"] = json::array({num(r1), num(r2)});
    j["samples"] = pts;
    j["dropped"] = r.dropped;
    j["sup_k"] = num(r.sup_k);
    j["sup_abs_k"] = num(r.sup_abs_k);
    j["band_edge"] = num(r.band_edge);
    j["flags_superoscillation"] = r.flags_superoscillation;
    out << j.dump(2) << '\n';
    return 0;
  }
  write_line(out, {"x", "k"});
  for (const auto& [x, k] : r.samples) write_line(out, {format_number(x), format_number(k)});
  out << "# sup_k=" << format_number(r.sup_k) << " sup_abs_k=" << format_number(r.sup_abs_k) << " band_edge=" << format_number(r.band_edge)
      << " flags_superoscillation=" << (r.flags_superoscillation ? "true" : "false") << " dropped=" << r.dropped
      << '\n';
  return 0;
}

int cmd_catalog(const Options& o, std::ostream& out) {
  if (o.out == "json") {
    json arr = json::array();
    for (const auto& e : catalog()) {
      arr.push_back(
          {{"name", e.name}, {"parameters", e.parameters}, {"band_edge", e.band_edge}, {"definition", e.definition}});
    }
    out << json{{"command", "catalog"}, {"functions", arr}}.dump(2) << '\n';
    return 0;
  }
  write_line(out, {"name", "parameters", "band_edge", "definition"});
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& e : catalog()) write_line(out, {e.name, quote(e.parameters), quote(e.band_edge), quote(e.definition)});
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superoscillation criteria for bandlimited functions", "superosc"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> modes{"sine", "cosine"};
  const std::vector<std::string> formats{"json", "csv"};
  auto common = [&](CLI::App* sub, bool criteria) {
    sub->add_option("--func", o.func, "function expression in x")->required();
    if (criteria) {
      sub->add_option("--mode", o.mode, "sine or cosine")->check(CLI::IsMember(modes));
      sub->add_option("--c", o.c, "reference level for the sine criterion");
      sub->add_option("--tol", o.tol, "quadrature cross-check tolerance factor");
      sub->add_option("--kmax", o.kmax, "cap on the number of local modes");
      sub->add_option("--threshold", o.threshold, "pass threshold for Q");
      sub->add_option("--step", o.step, "root scan step");
    }
    sub->add_option("--out", o.out, "json or csv")->check(CLI::IsMember(formats));
    sub->add_flag("--deterministic", o.deterministic, "evaluate serially");
  };

  auto* analyze = app.add_subcommand("analyze", "Q for one interval");
  common(analyze, true);
  analyze->add_option("--interval", o.interval, "b1:b2")->required();

  auto* scan = app.add_subcommand("scan", "Q profile over consecutive endpoints");
  common(scan, true);
  scan->add_option("--anchor", o.anchor, "fixed endpoint")->required();
  scan->add_option("--direction", o.direction, "left, right or both")
      ->check(CLI::IsMember({"left", "right", "both"}));
  auto* max_points = scan->add_option("--max-points", o.max_points, "maximum number of endpoints");
  scan->add_option("--stop-after-fails", o.stop_after_fails, "stop after this many consecutive fails (0: never)");

  auto* classify = app.add_subcommand("classify", "interval-sandwich verdict");
  common(classify, true);
  classify->add_option("--interval", o.interval, "target b1:b2")->required();
  classify->add_option("--window", o.window, "search window w1:w2");

  auto* wavenumber = app.add_subcommand("wavenumber", "local wavenumber of the analytic signal");
  common(wavenumber, false);
  wavenumber->add_option("--range", o.range, "x1:x2")->required();
  wavenumber->add_option("--samples", o.samples, "number of samples");

  auto* cat = app.add_subcommand("catalog", "list catalog functions");
  cat->add_option("--out", o.out, "json or csv")->check(CLI::IsMember(formats));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*analyze) {
      if (o.out.empty()) o.out = "json";
      return cmd_analyze(o, out);
    }
    if (*scan) {
      if (o.out.empty()) o.out = "csv";
      o.max_points_given = max_points->count() > 0;
      return cmd_scan(o, out);
    }
    if (*classify) {
      if (o.out.empty()) o.out = "json";
      return cmd_classify(o, out);
    }
    if (*wavenumber) {
      if (o.out.empty()) o.out = "csv";
      return cmd_wavenumber(o, out);
    }
    if (o.out.empty()) o.out = "csv";
    return cmd_catalog(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const CompileError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const RepresentationError& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace superosc::cli
