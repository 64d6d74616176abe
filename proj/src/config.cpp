#include "znav/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace znav {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number for " + what + ": \"" + text + "\"");
  }
}

long parse_long(const std::string& text, const std::string& what) {
  try {
    size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad integer for " + what + ": \"" + text + "\"");
  }
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ValidationError("bad boolean for " + what + ": \"" + text + "\"");
}

RunConfig RunConfig::from_ini_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("config line " + std::to_string(lineno) + ": unterminated section");
      section = lower(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ValidationError("config line " + std::to_string(lineno) + ": key outside a section");
    cfg.kv_[section][key] = value;
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    // A dualize output document: re-ingest its embedded source config.
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("bad JSON config: ") + e.what());
    }
    if (!doc.contains("source_config"))
      throw ValidationError("JSON config lacks a source_config object");
    RunConfig cfg;
    for (const auto& [section, entries] : doc["source_config"].items()) {
      for (const auto& [key, value] : entries.items()) {
        cfg.kv_[section][key] = value.get<std::string>();
      }
    }
    return cfg;
  }
  return from_ini_text(text);
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
  const auto it = kv_.find(section);
  return it != kv_.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  const auto it = kv_.find(section);
  if (it == kv_.end()) return fallback;
  const auto jt = it->second.find(key);
  return jt == it->second.end() ? fallback : jt->second;
}

std::string RunConfig::require(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    throw ValidationError("missing config key [" + section + "] " + key);
  return get(section, key, "");
}

std::shared_ptr<const Metric> RunConfig::build_metric() const {
  const std::string name = lower(get("surface", "name", "flat_torus"));
  if (name == "flat_torus") return ConformalSurface::flat_torus();
  if (name == "sphere") return ConformalSurface::sphere();
  if (name == "hyperbolic_disk") return ConformalSurface::hyperbolic_disk();
  if (name != "conformal")
    throw ValidationError("unknown surface name \"" + name + "\"");

  const Expression f = Expression::parse(require("surface", "f"));
  Chart chart = torus_chart();
  if (has("surface", "domain")) {
    std::istringstream ds(get("surface", "domain", ""));
    if (!(ds >> chart.x0 >> chart.x1 >> chart.y0 >> chart.y1))
      throw ValidationError("surface domain needs four numbers: x0 x1 y0 y1");
  }
  chart.periodic_x = parse_bool(get("surface", "periodic_x", "true"), "periodic_x");
  chart.periodic_y = parse_bool(get("surface", "periodic_y", "true"), "periodic_y");
  chart.pole_compactification =
      parse_bool(get("surface", "pole_compactification", "false"), "pole_compactification");
  const std::string chi_default = chart.pole_compactification ? "2" : "0";
  chart.euler_characteristic = static_cast<int>(
      parse_long(get("surface", "euler_characteristic", chi_default), "euler_characteristic"));
  chart.validate();
  return ConformalSurface::from_expression(chart, f);
}

DriftKind RunConfig::drift_kind() const {
  const std::string kind = lower(get("drift", "kind", "none"));
  if (kind == "vector") return DriftKind::VectorField;
  if (kind == "form" || kind == "none") return DriftKind::OneForm;
  throw ValidationError("drift kind must be vector, form or none");
}

DriftSpec RunConfig::build_drift() const {
  const std::string kind = lower(get("drift", "kind", "none"));
  if (kind == "none") return DriftSpec::zero(DriftKind::OneForm);
  DriftSpec d;
  d.kind = drift_kind();
  const Expression c1 = Expression::parse(get("drift", "comp1", "0"));
  const Expression c2 = Expression::parse(get("drift", "comp2", "0"));
  d.comp1 = [c1](Vec2 q) { return c1.eval_jet(q.x, q.y); };
  d.comp2 = [c2](Vec2 q) { return c2.eval_jet(q.x, q.y); };
  d.norm_margin = parse_double(get("drift", "norm_margin", "0.02"), "norm_margin");
  if (!(d.norm_margin > 0.0)) throw ValidationError("norm_margin must be > 0");
  return d;
}

CoZermeloProblem RunConfig::cozermelo_problem() const {
  auto metric = build_metric();
  DriftSpec d = build_drift();
  if (d.kind != DriftKind::OneForm)
    throw ValidationError("this operation needs a one-form (or absent) drift");
  validate_drift(*metric, d);
  return CoZermeloProblem(metric, std::move(d));
}

ZermeloProblem RunConfig::zermelo_problem() const {
  auto metric = build_metric();
  DriftSpec d = build_drift();
  if (d.kind != DriftKind::VectorField)
    throw ValidationError("this operation needs a vector-field drift");
  validate_drift(*metric, d);
  return ZermeloProblem(metric, std::move(d));
}

SolverConfig RunConfig::solver() const {
  SolverConfig cfg;
  cfg.abs_tol = parse_double(get("solver", "abs_tol", "1e-10"), "abs_tol");
  cfg.rel_tol = parse_double(get("solver", "rel_tol", "1e-10"), "rel_tol");
  cfg.max_steps = parse_long(get("solver", "max_steps", "10000000"), "max_steps");
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
    throw ValidationError("solver tolerances must be positive");
  if (cfg.max_steps <= 0) throw ValidationError("max_steps must be positive");
  return cfg;
}

double RunConfig::t_max() const {
  const double t = parse_double(get("solver", "t_max", "10"), "t_max");
  if (!(t > 0.0)) throw ValidationError("t_max must be positive");
  return t;
}

QuadratureGrid RunConfig::grid(const Chart& chart) const {
  const int nx = static_cast<int>(parse_long(get("quadrature", "nx", "96"), "nx"));
  const int ny = static_cast<int>(parse_long(get("quadrature", "ny", "96"), "ny"));
  const int nt = static_cast<int>(parse_long(get("quadrature", "ntheta", "96"), "ntheta"));
  return QuadratureGrid::for_chart(chart, nx, ny, nt);
}

std::optional<Rect> RunConfig::drift_region() const {
  if (!has("drift", "region")) return std::nullopt;
  Rect r;
  std::istringstream rs(get("drift", "region", ""));
  if (!(rs >> r.x0 >> r.x1 >> r.y0 >> r.y1))
    throw ValidationError("drift region needs four numbers: x0 x1 y0 y1");
  if (!(r.x1 > r.x0) || !(r.y1 > r.y0)) throw ValidationError("drift region is degenerate");
  return r;
}

std::string RunConfig::output_format() const {
  const std::string f = lower(get("output", "format", "json"));
  if (f != "csv" && f != "json") throw ValidationError("output format must be csv or json");
  return f;
}

std::string RunConfig::output_path() const { return get("output", "path", ""); }

}  // namespace znav
