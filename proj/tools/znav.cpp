// znav command-line front end: extremal, curvature, conjugate, dualize,
// gauss-bonnet and verify over an INI-style run configuration.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical
// failure or failed check. Data goes to --out (or stdout); diagnostics go
// to stderr (ZNAV_LOG = error | info | debug).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "znav/config.hpp"
#include "znav/conjugate.hpp"
#include "znav/curvature.hpp"
#include "znav/duality.hpp"
#include "znav/integrals.hpp"
#include "znav/log.hpp"
#include "znav/rng.hpp"

using nlohmann::json;
using namespace znav;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string format;  // empty = from config
  std::string out_path;
  std::uint64_t seed = 1;
  std::string grid_spec;  // "NX,NY,NT"
  double tmax = -1.0;     // <0 = from config
  int threads = 0;
};

void add_common(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("--config", args.config_path, "run configuration file")->required();
  cmd->add_option("--format", args.format, "output format: csv | json");
  cmd->add_option("--out", args.out_path, "output path (default stdout)");
  cmd->add_option("--seed", args.seed, "random seed for sampling checks");
  cmd->add_option("--grid", args.grid_spec, "quadrature grid NX,NY,NT");
  cmd->add_option("--tmax", args.tmax, "integration horizon override");
  cmd->add_option("--threads", args.threads, "cap on OpenMP worker threads");
}

void apply_threads(const GlobalArgs& args) {
#ifdef _OPENMP
  if (args.threads > 0) omp_set_num_threads(args.threads);
#else
  (void)args;
#endif
}

QuadratureGrid grid_from_args(const GlobalArgs& args, const RunConfig& cfg, const Chart& chart) {
  if (args.grid_spec.empty()) return cfg.grid(chart);
  int nx = 0, ny = 0, nt = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(args.grid_spec);
  if (!(in >> nx >> c1 >> ny >> c2 >> nt) || c1 != ',' || c2 != ',')
    throw ValidationError("--grid expects NX,NY,NT");
  return QuadratureGrid::for_chart(chart, nx, ny, nt);
}

// Data goes to --out or stdout; the sidecar summary goes to the other
// stream so data and summaries never interleave.
class OutputSink {
 public:
  OutputSink(const std::string& path, const std::string& cfg_path)
      : to_file_(!path.empty() || !cfg_path.empty()) {
    if (to_file_) {
      const std::string& p = path.empty() ? cfg_path : path;
      file_.open(p);
      if (!file_) throw ValidationError("cannot open output path: " + p);
      path_ = p;
    }
  }
  std::ostream& stream() { return to_file_ ? static_cast<std::ostream&>(file_) : std::cout; }
  // Summary stream: stdout when data went to a file, stderr otherwise.
  std::ostream& summary() { return to_file_ ? std::cout : std::cerr; }
  bool to_file() const { return to_file_; }
  const std::string& path() const { return path_; }

 private:
  bool to_file_;
  std::ofstream file_;
  std::string path_;
};

std::string format_from(const GlobalArgs& args, const RunConfig& cfg) {
  if (!args.format.empty()) {
    if (args.format != "csv" && args.format != "json")
      throw ValidationError("--format must be csv or json");
    return args.format;
  }
  return cfg.output_format();
}

json trajectory_json(const ExtremalTrajectory& traj) {
  json samples = json::array();
  for (const auto& s : traj.samples) {
    samples.push_back({{"t", s.t},
                       {"x", s.state.q.x},
                       {"y", s.state.q.y},
                       {"theta", s.state.theta},
                       {"h_residual", s.h_residual}});
  }
  const char* term = traj.termination == Termination::Completed      ? "completed"
                     : traj.termination == Termination::PoleGuard    ? "pole_guard"
                                                                     : "chart_exit";
  return json{{"samples", samples},
              {"hamiltonian_drift", traj.hamiltonian_drift},
              {"termination", term},
              {"solver_stats",
               {{"n_steps", traj.stats.n_steps},
                {"n_accepted", traj.stats.n_accepted},
                {"n_rejected", traj.stats.n_rejected},
                {"n_rhs", traj.stats.n_rhs}}}};
}

void write_trajectory_csv(std::ostream& os, const ExtremalTrajectory& traj) {
  os << "t,x,y,theta,h_residual\n";
  char buf[256];
  for (const auto& s : traj.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.state.q.x,
                  s.state.q.y, s.state.theta, s.h_residual);
    os << buf;
  }
}

std::vector<double> even_times(double T, int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(T * i / n);
  return out;
}

int cmd_extremal(const GlobalArgs& args, double start_x, double start_y, double theta,
                 int samples) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  const double T = args.tmax > 0 ? args.tmax : cfg.t_max();
  const SolverConfig solver = cfg.solver();
  const FiberPoint start{{start_x, start_y}, theta};
  const std::vector<double> times = samples > 0 ? even_times(T, samples) : std::vector<double>{};

  ExtremalTrajectory traj;
  if (cfg.is_vector_drift()) {
    const ZermeloProblem pb = cfg.zermelo_problem();
    traj = integrate_extremal_zermelo(pb, covector_of(pb, start), T, solver, times);
  } else {
    const CoZermeloProblem pb = cfg.cozermelo_problem();
    traj = integrate_extremal(pb, start, T, solver, times);
  }

  OutputSink sink(args.out_path, cfg.output_path());
  if (format_from(args, cfg) == "csv") {
    write_trajectory_csv(sink.stream(), traj);
  } else {
    sink.stream() << trajectory_json(traj).dump(2) << "\n";
  }
  const auto& end = traj.back();
  json summary{{"final", {{"t", end.t}, {"x", end.state.q.x}, {"y", end.state.q.y},
                          {"theta", end.state.theta}}},
               {"hamiltonian_drift", traj.hamiltonian_drift}};
  sink.summary() << summary.dump() << "\n";
  return 0;
}

int cmd_curvature(const GlobalArgs& args, const std::string& kind_name) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  CurvatureKind kind = CurvatureKind::CoZermelo;
  if (kind_name == "gaussian") kind = CurvatureKind::Gaussian;
  else if (kind_name == "magnetic") kind = CurvatureKind::Magnetic;
  else if (kind_name == "cozermelo") kind = CurvatureKind::CoZermelo;
  else if (kind_name == "oracle") kind = CurvatureKind::Oracle;
  else throw ValidationError("curvature --kind must be gaussian|magnetic|cozermelo|oracle");

  // Vector drifts evaluate through their dual problem.
  CoZermeloProblem pb = cfg.is_vector_drift()
                            ? dualize_zermelo(cfg.zermelo_problem(),
                                              DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64})
                                  .problem
                            : cfg.cozermelo_problem();

  const QuadratureGrid grid = grid_from_args(args, cfg, pb.metric->chart());
  const std::vector<Vec2> nodes = quadrature_nodes(*pb.metric, grid);
  const int ntheta = grid.ntheta;
  const long total = static_cast<long>(nodes.size()) * ntheta;
  std::vector<double> kappa(total);

  const CurvatureField field = make_curvature_field(pb, kind);
  if (kind == CurvatureKind::Oracle) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < total; ++k) {
      const Vec2 q = nodes[k / ntheta];
      kappa[k] = field.eval({q, (k % ntheta) * kTwoPi / ntheta});
    }
  } else {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < static_cast<long>(nodes.size()); ++k) {
      const FiberPointData d = fiber_point_data(pb, nodes[k]);
      for (int m = 0; m < ntheta; ++m) {
        const double theta = m * kTwoPi / ntheta;
        double val = 0.0;
        switch (kind) {
          case CurvatureKind::Gaussian: val = d.kg; break;
          case CurvatureKind::Magnetic: val = d.kappa_mag(theta); break;
          default: val = d.kappa_cozermelo(theta); break;
        }
        kappa[k * ntheta + m] = val;
      }
    }
  }

  double lo = kappa.empty() ? 0.0 : kappa[0], hi = lo, mean = 0.0;
  for (const double v : kappa) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    mean += v;
  }
  if (!kappa.empty()) mean /= static_cast<double>(kappa.size());
  const json summary{{"kind", kind_name}, {"nx", grid.nx},   {"ny", grid.ny},
                     {"ntheta", ntheta},  {"min", lo},       {"max", hi},
                     {"mean", mean},      {"count", total}};

  OutputSink sink(args.out_path, cfg.output_path());
  if (format_from(args, cfg) == "csv") {
    std::ostream& os = sink.stream();
    os << "x,y,theta,kappa\n";
    char buf[256];
    for (long k = 0; k < total; ++k) {
      const Vec2 q = nodes[k / ntheta];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", q.x, q.y,
                    (k % ntheta) * kTwoPi / ntheta, kappa[k]);
      os << buf;
    }
    sink.summary() << summary.dump() << "\n";
  } else {
    sink.stream() << summary.dump(2) << "\n";
  }
  return 0;
}

int cmd_conjugate(const GlobalArgs& args, double start_x, double start_y, double theta,
                  const std::string& sweep) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  const double T = args.tmax > 0 ? args.tmax : cfg.t_max();
  const SolverConfig solver = cfg.solver();

  const CoZermeloProblem pb =
      cfg.is_vector_drift()
          ? dualize_zermelo(cfg.zermelo_problem(),
                            DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64})
                .problem
          : cfg.cozermelo_problem();

  OutputSink sink(args.out_path, cfg.output_path());

  if (!sweep.empty()) {
    int n = 0;
    if (sweep.rfind("theta:", 0) != 0 ||
        (n = static_cast<int>(parse_long(sweep.substr(6), "--sweep"))) <= 0)
      throw ValidationError("--sweep expects theta:N with N > 0");
    std::vector<std::optional<double>> results(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double th = i * kTwoPi / n;
      const ConjugateReport r =
          first_conjugate_time(pb, {{start_x, start_y}, th}, T, solver);
      results[i] = r.first_conjugate_time;
    }
    std::ostream& os = sink.stream();
    os << "theta,t_conjugate\n";
    char buf[128];
    for (int i = 0; i < n; ++i) {
      if (results[i])
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", i * kTwoPi / n, *results[i]);
      else
        std::snprintf(buf, sizeof(buf), "%.17g,\n", i * kTwoPi / n);
      os << buf;
    }
    return 0;
  }

  const ConjugateReport r = first_conjugate_time(pb, {{start_x, start_y}, theta}, T, solver);
  json doc{{"t_max", r.t_max},
           {"start", {{"x", start_x}, {"y", start_y}, {"theta", theta}}}};
  if (r.first_conjugate_time) {
    doc["first_conjugate_time"] = *r.first_conjugate_time;
    doc["bracket"] = {r.bracket_lo, r.bracket_hi};
    doc["gamma_at_bracket"] = {r.gamma_lo, r.gamma_hi};
  } else {
    doc["first_conjugate_time"] = nullptr;
  }
  sink.stream() << doc.dump(2) << "\n";
  return 0;
}

json cotangent_json(const CotangentPoint& cp) {
  return json{{"x", cp.q.x}, {"y", cp.q.y}, {"p1", cp.p.p1}, {"p2", cp.p.p2}};
}

int cmd_dualize(const GlobalArgs& args) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  DualizeOptions opts;
  opts.region = cfg.drift_region();

  json doc;
  std::shared_ptr<const Metric> dual_metric;
  DriftSpec dual_drift;
  std::function<EllipseFields(Vec2)> ellipse;
  DualityReport report;

  if (cfg.is_vector_drift()) {
    const ZermeloProblem pb = cfg.zermelo_problem();
    const DualCoZermelo dual = dualize_zermelo(pb, opts);
    doc["direction"] = "zermelo_to_cozermelo";
    doc["zero_drift"] = dual.zero_drift;
    dual_metric = dual.problem.metric;
    dual_drift = dual.problem.drift;
    ellipse = dual.ellipse;
    report = verify_duality(pb, dual, 1000, 1e-9, args.seed, opts.region);
  } else {
    const CoZermeloProblem pb = cfg.cozermelo_problem();
    const DualZermelo dual = dualize_cozermelo(pb, opts);
    doc["direction"] = "cozermelo_to_zermelo";
    doc["zero_drift"] = dual.zero_drift;
    dual_metric = dual.problem.metric;
    dual_drift = dual.problem.drift;
    const DriftSpec source = pb.drift;
    ellipse = [source](Vec2 q) {
      const double n = source.norm(q);
      const double w = 1.0 - n * n;
      return EllipseFields{1.0 / w, 1.0 / std::sqrt(w), n / w};
    };
    report = verify_duality(pb, dual, 1000, 1e-9, args.seed, opts.region);
  }

  const QuadratureGrid grid = grid_from_args(args, cfg, dual_metric->chart());
  QuadratureGrid coarse = grid;
  coarse.nx = std::min(grid.nx, 32);
  coarse.ny = std::min(grid.ny, 32);
  const std::vector<Vec2> nodes = quadrature_nodes(*dual_metric, coarse);

  json xs = json::array(), ys = json::array();
  json g11 = json::array(), g12 = json::array(), g22 = json::array();
  json d1 = json::array(), d2 = json::array();
  json ea = json::array(), eb = json::array(), ec = json::array();
  for (const Vec2& q : nodes) {
    const auto [f1, f2] = dual_metric->coframe_at(q);
    const Vec2 comps = dual_drift.components(q);
    xs.push_back(q.x);
    ys.push_back(q.y);
    g11.push_back(f1.p1 * f1.p1 + f2.p1 * f2.p1);
    g12.push_back(f1.p1 * f1.p2 + f2.p1 * f2.p2);
    g22.push_back(f1.p2 * f1.p2 + f2.p2 * f2.p2);
    if (dual_drift.kind == DriftKind::OneForm) {
      const Cov2 cov = dual_metric->covector_from_frame_components(q, comps.x, comps.y);
      d1.push_back(cov.p1);
      d2.push_back(cov.p2);
    } else {
      const Vec2 vec = dual_metric->vector_from_frame_components(q, comps.x, comps.y);
      d1.push_back(vec.x);
      d2.push_back(vec.y);
    }
    const EllipseFields e = ellipse(q);
    ea.push_back(e.semimajor);
    eb.push_back(e.semiminor);
    ec.push_back(e.focal);
  }
  doc["grid"] = {{"nx", coarse.nx}, {"ny", coarse.ny}};
  doc["x"] = xs;
  doc["y"] = ys;
  doc["metric"] = {{"g11", g11}, {"g12", g12}, {"g22", g22}};
  doc["drift"] = {{"p1", d1}, {"p2", d2}};
  doc["ellipse"] = {{"a", ea}, {"b", eb}, {"c", ec}};
  doc["verification"] = {{"max_abs_error", report.max_abs_error},
                         {"n_samples", report.n_samples},
                         {"tol", report.tol},
                         {"pass", report.pass},
                         {"worst", cotangent_json(report.worst)}};
  json source_config;
  for (const auto& [section, entries] : cfg.sections()) {
    for (const auto& [key, value] : entries) source_config[section][key] = value;
  }
  doc["source_config"] = source_config;

  OutputSink sink(args.out_path, cfg.output_path());
  sink.stream() << doc.dump(2) << "\n";
  return report.pass ? 0 : 3;
}

int cmd_gauss_bonnet(const GlobalArgs& args) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  const CoZermeloProblem pb =
      cfg.is_vector_drift()
          ? dualize_zermelo(cfg.zermelo_problem(),
                            DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64})
                .problem
          : cfg.cozermelo_problem();
  const QuadratureGrid grid = grid_from_args(args, cfg, pb.metric->chart());
  const GaussBonnetReport r = gauss_bonnet_report(pb, grid);
  const json doc{{"lhs_cozermelo", r.lhs_cozermelo},
                 {"lhs_magnetic", r.lhs_magnetic},
                 {"chi", r.chi},
                 {"omega_term", r.omega_term},
                 {"schwarzian_term", r.schwarzian_term},
                 {"identity_residual", r.identity_residual},
                 {"decomposition_residual", r.decomposition_residual},
                 {"inequality_holds", r.inequality_holds},
                 {"tol", r.tol},
                 {"grid", {{"nx", grid.nx}, {"ny", grid.ny}, {"ntheta", grid.ntheta}}}};
  OutputSink sink(args.out_path, cfg.output_path());
  sink.stream() << doc.dump(2) << "\n";
  return r.inequality_holds ? 0 : 3;
}

// ---- verify ----

struct Check {
  std::string name;
  std::string status;  // pass | fail | skipped | info
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

Check make_check(const std::string& name, double measured, double tol) {
  return {name, measured < tol ? "pass" : "fail", measured, tol, ""};
}

int cmd_verify(const GlobalArgs& args) {
  const RunConfig cfg = RunConfig::load(args.config_path);
  const SolverConfig solver = cfg.solver();
  const bool vector = cfg.is_vector_drift();

  std::optional<ZermeloProblem> zpb;
  std::optional<CoZermeloProblem> cpb;
  std::string dual_note;
  if (vector) {
    zpb = cfg.zermelo_problem();
    try {
      cpb = dualize_zermelo(*zpb, DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64}).problem;
    } catch (const ValidationError& e) {
      dual_note = e.what();
    }
  } else {
    cpb = cfg.cozermelo_problem();
  }
  if (!cpb) {
    // Vector drift with zeros: the co-Zermelo side is unavailable.
    std::cerr << "verify: cannot build the dual problem: " << dual_note << "\n";
    return 2;
  }
  const CoZermeloProblem& pb = *cpb;
  const Chart& chart = pb.metric->chart();
  const Rect box = cfg.drift_region().value_or(
      chart.pole_compactification ? Rect{-1.5, 1.5, -1.5, 1.5} : chart_rect(chart));

  std::vector<Check> checks;
  const auto sample_covector = [&](SplitMix64& rng) {
    CotangentPoint cp;
    cp.q = {box.x0 + rng.uniform() * (box.x1 - box.x0),
            box.y0 + rng.uniform() * (box.y1 - box.y0)};
    const double ang = rng.uniform() * kTwoPi;
    const double mag = std::pow(10.0, -1.0 + 2.0 * rng.uniform());
    cp.p = {mag * std::cos(ang), mag * std::sin(ang)};
    return cp;
  };

  {  // 1-homogeneity of the Hamiltonians.
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      SplitMix64 rng(args.seed, 1000 + k);
      const CotangentPoint cp = sample_covector(rng);
      for (const double s : {0.5, 2.0, 10.0}) {
        const CotangentPoint scaled{cp.q, s * cp.p};
        const double h0 = h_cozermelo(pb, cp);
        worst = std::max(worst, std::fabs(h_cozermelo(pb, scaled) - s * h0) /
                                    std::max(1e-300, s * h0));
        if (zpb) {
          const double z0 = h_zermelo(*zpb, cp);
          worst = std::max(worst, std::fabs(h_zermelo(*zpb, scaled) - s * z0) /
                                      std::max(1e-300, s * z0));
        }
      }
    }
    checks.push_back(make_check("homogeneity", worst, 1e-12));
  }

  {  // Implicit equation |lambda - h Upsilon|_g = h.
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      SplitMix64 rng(args.seed, 2000 + k);
      const CotangentPoint cp = sample_covector(rng);
      const double h = h_cozermelo(pb, cp);
      const Vec2 a = pb.metric->covector_frame_components(cp.q, cp.p);
      const Vec2 u = pb.drift.components(cp.q);
      worst = std::max(worst, std::fabs(std::hypot(a.x - h * u.x, a.y - h * u.y) - h));
    }
    checks.push_back(make_check("implicit_residual", worst, 1e-10));
  }

  {  // Level-set consistency of the fiber parametrization.
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      SplitMix64 rng(args.seed, 3000 + k);
      const FiberPoint s{{box.x0 + rng.uniform() * (box.x1 - box.x0),
                          box.y0 + rng.uniform() * (box.y1 - box.y0)},
                         rng.uniform() * kTwoPi};
      worst = std::max(worst, std::fabs(h_cozermelo(pb, covector_of(pb, s)) - 1.0));
    }
    checks.push_back(make_check("level_set", worst, 1e-12));
  }

  {  // Duality match, sampled over the bounded working box.
    Check c{"duality_match", "skipped", 0.0, 1e-9, ""};
    try {
      if (vector) {
        const DualCoZermelo dual =
            dualize_zermelo(*zpb, DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64});
        const DualityReport r = verify_duality(*zpb, dual, 500, 1e-9, args.seed, box);
        c = make_check("duality_match", r.max_abs_error, 1e-9);
      } else {
        const DualZermelo dual =
            dualize_cozermelo(pb, DualizeOptions{cfg.drift_region(), 1e-6, 1e-12, 64});
        const DualityReport r = verify_duality(pb, dual, 500, 1e-9, args.seed, box);
        c = make_check("duality_match", r.max_abs_error, 1e-9);
      }
    } catch (const ValidationError& e) {
      c.note = e.what();  // vanishing drift: construction not applicable
    }
    checks.push_back(c);
  }

  {  // Closed-form curvature against the bracket oracle.
    const Field3 h3 = cozermelo_field3(pb);
    const Field3 v3 = cozermelo_vertical_field3(pb);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      SplitMix64 rng(args.seed, 4000 + k);
      const Vec3 p{box.x0 + rng.uniform() * (box.x1 - box.x0),
                   box.y0 + rng.uniform() * (box.y1 - box.y0), rng.uniform() * kTwoPi};
      const double closed = kappa_cozermelo(pb, {{p.x, p.y}, p.t});
      const OracleResult r = curvature_bracket_oracle(h3, v3, p);
      worst = std::max(worst,
                       std::fabs(r.kappa - closed) / std::max(1.0, std::fabs(closed)));
    }
    checks.push_back(make_check("curvature_oracle", worst, 1e-3));
  }

  {  // Magnetic L-term self-test.
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      SplitMix64 rng(args.seed, 5000 + k);
      const FiberPoint s{{box.x0 + rng.uniform() * (box.x1 - box.x0),
                          box.y0 + rng.uniform() * (box.y1 - box.y0)},
                         rng.uniform() * kTwoPi};
      const double analytic = fiber_point_data(pb, s.q).lterm(s.theta);
      const double numeric = kappa_mag_lterm_numeric(pb, s);
      worst = std::max(worst, std::fabs(analytic - numeric));
    }
    checks.push_back(make_check("lterm_selftest", worst, 1e-5));
  }

  const FiberPoint probe{{0.5 * (box.x0 + box.x1), 0.5 * (box.y0 + box.y1) + 0.1}, 0.8};
  {  // Wronskian over a representative arc.
    const double T = std::min(cfg.t_max(), 10.0);
    const JacobiArc arc = jacobi_solve(pb, probe, T, solver);
    checks.push_back(make_check("wronskian", arc.wronskian_drift, 1e-8));
  }

  {  // Gauss-Bonnet identity at the configured grid.
    const QuadratureGrid grid = grid_from_args(args, cfg, chart);
    const GaussBonnetReport r = gauss_bonnet_report(pb, grid);
    checks.push_back(make_check("gauss_bonnet_identity", r.identity_residual, 1e-4));
    checks.push_back(make_check("gauss_bonnet_decomposition", r.decomposition_residual, 1e-4));
    Check ineq{"gauss_bonnet_inequality", r.inequality_holds ? "pass" : "fail",
               r.lhs_cozermelo - r.chi, -1e-4, ""};
    checks.push_back(ineq);
  }

  {  // Conjugate time, informational.
    const ConjugateReport r = first_conjugate_time(pb, probe, cfg.t_max(), solver);
    Check c{"conjugate_time", "info", 0.0, 0.0, ""};
    if (r.first_conjugate_time) {
      c.measured = *r.first_conjugate_time;
      c.note = "first conjugate time";
    } else {
      c.measured = -1.0;
      c.note = "no conjugate point up to t_max";
    }
    checks.push_back(c);
  }

  bool all_pass = true;
  std::string first_fail;
  json jchecks = json::array();
  for (const auto& c : checks) {
    json jc{{"name", c.name}, {"status", c.status}, {"measured", c.measured},
            {"tolerance", c.tolerance}};
    if (!c.note.empty()) jc["note"] = c.note;
    jchecks.push_back(jc);
    if (c.status == "fail" && all_pass) {
      all_pass = false;
      first_fail = c.name;
    }
  }
  const json doc{{"checks", jchecks},
                 {"overall", all_pass ? "pass" : "fail"},
                 {"seed", args.seed}};
  OutputSink sink(args.out_path, cfg.output_path());
  sink.stream() << doc.dump(2) << "\n";
  if (!all_pass) {
    std::cerr << "verify: first failing check: " << first_fail << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal navigation on two-dimensional Riemannian surfaces"};
  app.require_subcommand(1);

  GlobalArgs args;
  double start_x = 0.0, start_y = 0.0, theta = 0.0;
  int samples = 0;
  std::string kind = "cozermelo";
  std::string sweep;

  CLI::App* extremal = app.add_subcommand("extremal", "integrate one extremal trajectory");
  add_common(extremal, args);
  extremal->add_option("--start-x", start_x, "start x");
  extremal->add_option("--start-y", start_y, "start y");
  extremal->add_option("--theta", theta, "start fiber angle");
  extremal->add_option("--samples", samples, "number of evenly spaced output samples");

  CLI::App* curvature = app.add_subcommand("curvature", "curvature values on a grid");
  add_common(curvature, args);
  curvature->add_option("--kind", kind, "gaussian | magnetic | cozermelo | oracle");

  CLI::App* conjugate = app.add_subcommand("conjugate", "first conjugate time");
  add_common(conjugate, args);
  conjugate->add_option("--start-x", start_x, "start x");
  conjugate->add_option("--start-y", start_y, "start y");
  conjugate->add_option("--theta", theta, "start fiber angle");
  conjugate->add_option("--sweep", sweep, "theta:N sweep over N fiber angles");

  CLI::App* dualize = app.add_subcommand("dualize", "emit the dual navigation problem");
  add_common(dualize, args);

  CLI::App* gb = app.add_subcommand("gauss-bonnet", "Gauss-Bonnet report");
  add_common(gb, args);

  CLI::App* verify = app.add_subcommand("verify", "bundled verification suite");
  add_common(verify, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(args);
    log_at(LogLevel::Info, "config: %s", args.config_path.c_str());
    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    if (extremal->parsed()) rc = cmd_extremal(args, start_x, start_y, theta, samples);
    else if (curvature->parsed()) rc = cmd_curvature(args, kind);
    else if (conjugate->parsed()) rc = cmd_conjugate(args, start_x, start_y, theta, sweep);
    else if (dualize->parsed()) rc = cmd_dualize(args);
    else if (gb->parsed()) rc = cmd_gauss_bonnet(args);
    else if (verify->parsed()) rc = cmd_verify(args);
    const auto t1 = std::chrono::steady_clock::now();
    log_at(LogLevel::Info, "done in %.3f s, exit %d",
           std::chrono::duration<double>(t1 - t0).count(), rc);
    return rc;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
