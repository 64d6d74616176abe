// Run configuration: sectioned key = value text (INI style) with expression
// strings for the conformal factor and drift components. The dualize
// subcommand emits JSON documents embedding their source config; those
// re-ingest through the same loader.

#ifndef ZNAV_CONFIG_HPP
#define ZNAV_CONFIG_HPP

#include <map>
#include <optional>
#include <string>

#include "znav/duality.hpp"
#include "znav/hamiltonian.hpp"
#include "znav/integrals.hpp"

namespace znav {

class RunConfig {
 public:
  static RunConfig load(const std::string& path);
  static RunConfig from_ini_text(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  std::string require(const std::string& section, const std::string& key) const;

  std::shared_ptr<const Metric> build_metric() const;
  DriftKind drift_kind() const;  // "none" maps to a zero one-form
  DriftSpec build_drift() const;
  // Metric + validated drift, ready to use.
  CoZermeloProblem cozermelo_problem() const;
  ZermeloProblem zermelo_problem() const;
  bool is_vector_drift() const { return drift_kind() == DriftKind::VectorField; }

  SolverConfig solver() const;
  double t_max() const;
  QuadratureGrid grid(const Chart& chart) const;
  std::optional<Rect> drift_region() const;

  std::string output_format() const;  // "csv" | "json"
  std::string output_path() const;    // empty = stdout

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return kv_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> kv_;
};

double parse_double(const std::string& text, const std::string& what);
long parse_long(const std::string& text, const std::string& what);
bool parse_bool(const std::string& text, const std::string& what);

}  // namespace znav

#endif
