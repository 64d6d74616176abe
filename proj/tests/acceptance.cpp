// Acceptance suite: seven end-to-end criteria with pinned tolerances, one
// PASS/FAIL line each. Exit code = number of failed criteria.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "znav/conjugate.hpp"
#include "znav/curvature.hpp"
#include "znav/duality.hpp"
#include "znav/integrals.hpp"
#include "znav/rng.hpp"

using namespace znav;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

DriftSpec sine_drift(double eps) {
  DriftSpec d;
  d.kind = DriftKind::OneForm;
  d.comp1 = [](Vec2) { return Jet2::constant(0.0); };
  d.comp2 = [eps](Vec2 q) { return eps * sin(Jet2::var_x(q.x)); };
  return d;
}

// 1. Riemannian reduction on the round sphere: curvature 1, conjugate time
// pi, normalized total curvature 2 = chi(S^2).
void criterion_1() {
  const CoZermeloProblem pb = CoZermeloProblem::riemannian(ConformalSurface::sphere());

  double worst_kappa = 0.0;
  for (int k = 0; k < 100; ++k) {
    SplitMix64 rng(101, k);
    const FiberPoint s{{-1.5 + 3.0 * rng.uniform(), -1.5 + 3.0 * rng.uniform()},
                       rng.uniform() * kTwoPi};
    worst_kappa = std::max(worst_kappa, std::fabs(kappa_cozermelo(pb, s) - 1.0));
  }
  const bool kappa_ok = worst_kappa < 1e-6;

  const ConjugateReport conj = first_conjugate_time(pb, {{0.5, 0.2}, 1.1}, 6.0);
  const bool conj_ok =
      conj.first_conjugate_time && std::fabs(*conj.first_conjugate_time - kPi) < 1e-6;

  const QuadratureGrid grid = QuadratureGrid::for_chart(pb.metric->chart(), 64, 64, 32);
  const double total = total_curvature(pb, grid) / (4.0 * kPi * kPi);
  const bool total_ok = std::fabs(total - 2.0) < 1e-3;

  report(1, "Riemannian reduction on the sphere", kappa_ok && conj_ok && total_ok,
         fmt("max|kappa-1| = %.2e, |t* - pi| = %.2e, total = %.6f",
             worst_kappa, conj.first_conjugate_time ? std::fabs(*conj.first_conjugate_time - kPi)
                                                    : 1.0,
             total));
}

// 2. Flat equality case: kappa = 0 everywhere, Gauss-Bonnet lhs = 0, no
// conjugate points up to T = 100, straight extremal base paths.
void criterion_2() {
  auto flat = ConformalSurface::flat_torus();
  const QuadratureGrid grid = QuadratureGrid::for_chart(flat->chart(), 48, 48, 48);
  bool ok = true;
  std::string detail;
  for (const double c : {0.2, 0.5, 0.8}) {
    DriftSpec d = DriftSpec::constant(DriftKind::OneForm, c, 0.0);
    d.norm_margin = 0.01;
    const CoZermeloProblem pb(flat, d);

    double worst_kappa = 0.0;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j) {
        const FiberPointData data = fiber_point_data(pb, {i * kTwoPi / 32, j * kTwoPi / 32});
        for (int m = 0; m < 32; ++m)
          worst_kappa = std::max(worst_kappa, std::fabs(data.kappa_cozermelo(m * kTwoPi / 32)));
      }
    ok = ok && worst_kappa < 1e-8;

    const GaussBonnetReport gb = gauss_bonnet_report(pb, grid);
    ok = ok && std::fabs(gb.lhs_cozermelo) < 1e-8;

    const ConjugateReport conj = first_conjugate_time(pb, {{1.0, 1.0}, 0.4}, 100.0);
    ok = ok && !conj.first_conjugate_time;

    // Straight base paths: max deviation of samples from the chord, with
    // the periodic wrap undone first (sample spacing keeps jumps < pi).
    double worst_dev = 0.0;
    for (const double theta : {0.3, 1.2, 2.5}) {
      std::vector<double> times;
      for (int i = 1; i <= 20; ++i) times.push_back(5.0 * i / 20.0);
      const ExtremalTrajectory traj =
          integrate_extremal(pb, {{0.5, 0.5}, theta}, 5.0, {}, times);
      std::vector<Vec2> pts;
      for (const auto& s : traj.samples) {
        Vec2 q = s.state.q;
        if (!pts.empty()) {
          q.x = pts.back().x + std::remainder(q.x - pts.back().x, kTwoPi);
          q.y = pts.back().y + std::remainder(q.y - pts.back().y, kTwoPi);
        }
        pts.push_back(q);
      }
      const Vec2 a = pts.front();
      const Vec2 b = pts.back();
      const double len = std::hypot(b.x - a.x, b.y - a.y);
      for (const Vec2& q : pts) {
        const double cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
        worst_dev = std::max(worst_dev, std::fabs(cross) / len);
      }
    }
    ok = ok && worst_dev < 1e-8;
    if (c == 0.5)
      detail = fmt("c=0.5: max|kappa| = %.2e, |lhs| = %.2e, max chord dev = %.2e", worst_kappa,
                   std::fabs(gb.lhs_cozermelo), worst_dev);
  }
  report(2, "flat equality case (constant drift)", ok, detail);
}

// 3. Exact integral identity for Upsilon = 0.3 sin(x) dy at grid 96^3.
void criterion_3() {
  auto flat = ConformalSurface::flat_torus();
  const double eps = 0.3;
  const CoZermeloProblem pb(flat, sine_drift(eps));
  const QuadratureGrid grid = QuadratureGrid::for_chart(flat->chart(), 96, 96, 96);
  const GaussBonnetReport gb = gauss_bonnet_report(pb, grid);
  const double omega_expected = kPi * eps * eps;  // 0.28274334
  const bool ok = gb.identity_residual < 1e-6 &&
                  std::fabs(gb.omega_term - omega_expected) < 1e-6;
  report(3, "exact integral identity at 96^3", ok,
         fmt("identity residual = %.2e, |omega_term - pi eps^2| = %.2e", gb.identity_residual,
             std::fabs(gb.omega_term - omega_expected)));
}

// 4. Duality for the flat constant drift X = 0.5 d/dx.
void criterion_4() {
  auto flat = ConformalSurface::flat_torus();
  const ZermeloProblem pb(flat, DriftSpec::constant(DriftKind::VectorField, 0.5, 0.0));
  const DualCoZermelo dual = dualize_zermelo(pb);

  const DualityReport rep = verify_duality(pb, dual, 1000, 1e-10, 404);
  const bool ham_ok = rep.max_abs_error < 1e-10;

  double worst_norm = 0.0;
  for (int k = 0; k < 50; ++k) {
    SplitMix64 rng(405, k);
    const Vec2 q{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const Vec2 comps = dual.problem.drift.components(q);
    const Cov2 upsilon =
        dual.problem.metric->covector_from_frame_components(q, comps.x, comps.y);
    worst_norm = std::max(
        worst_norm, std::fabs(dual.problem.metric->norm_covector(q, upsilon) - 0.5));
  }
  const bool norm_ok = worst_norm < 1e-10;

  double worst_flow = 0.0;
  const std::vector<double> times{1.0, 2.0, 3.0, 4.0, 5.0};
  for (int k = 0; k < 3; ++k) {
    SplitMix64 rng(406, k);
    CotangentPoint cp{{1.0 + rng.uniform(), 1.0 + rng.uniform()},
                      {0.4 + rng.uniform(), 0.2 + rng.uniform()}};
    cp.p = (1.0 / h_zermelo(pb, cp)) * cp.p;
    const ExtremalTrajectory a = integrate_extremal_zermelo(pb, cp, 5.0, {}, times);
    const ExtremalTrajectory b =
        integrate_extremal(dual.problem, fiber_of(dual.problem, cp, 1e-7), 5.0, {}, times);
    for (size_t i = 0; i < a.samples.size(); ++i) {
      worst_flow = std::max(worst_flow,
                            std::hypot(a.samples[i].state.q.x - b.samples[i].state.q.x,
                                       a.samples[i].state.q.y - b.samples[i].state.q.y));
    }
  }
  const bool flow_ok = worst_flow < 1e-6;

  report(4, "duality of the flat constant drift", ham_ok && norm_ok && flow_ok,
         fmt("max|h_Z - h_coZ| = %.2e, max norm dev = %.2e, max flow dev = %.2e",
             rep.max_abs_error, worst_norm, worst_flow));
}

// 5. Curvature oracle equivalence and the derived magnetic formula.
void criterion_5() {
  const double eps = 0.3;
  const CoZermeloProblem sine(ConformalSurface::flat_torus(), sine_drift(eps));
  const CoZermeloProblem sphere = CoZermeloProblem::riemannian(ConformalSurface::sphere());

  double worst_rel = 0.0;
  {
    const Field3 h3 = cozermelo_field3(sine);
    const Field3 v3 = cozermelo_vertical_field3(sine);
    for (int k = 0; k < 100; ++k) {
      SplitMix64 rng(505, k);
      const Vec3 p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
      const double closed = kappa_cozermelo(sine, {{p.x, p.y}, p.t});
      const OracleResult r = curvature_bracket_oracle(h3, v3, p);
      worst_rel = std::max(worst_rel,
                           std::fabs(r.kappa - closed) / std::max(1.0, std::fabs(closed)));
    }
  }
  {
    const Field3 h3 = cozermelo_field3(sphere);
    const Field3 v3 = cozermelo_vertical_field3(sphere);
    for (int k = 0; k < 100; ++k) {
      SplitMix64 rng(506, k);
      const Vec3 p{-1.5 + 3.0 * rng.uniform(), -1.5 + 3.0 * rng.uniform(),
                   rng.uniform() * kTwoPi};
      const double closed = kappa_cozermelo(sphere, {{p.x, p.y}, p.t});
      const OracleResult r = curvature_bracket_oracle(h3, v3, p);
      worst_rel = std::max(worst_rel,
                           std::fabs(r.kappa - closed) / std::max(1.0, std::fabs(closed)));
    }
  }
  const bool oracle_ok = worst_rel < 1e-3;

  double worst_formula = 0.0;
  for (int k = 0; k < 100; ++k) {
    SplitMix64 rng(507, k);
    const FiberPoint s{{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi},
                       rng.uniform() * kTwoPi};
    const double expected = eps * eps * std::cos(s.q.x) * std::cos(s.q.x) +
                            eps * std::sin(s.theta) * std::sin(s.q.x);
    worst_formula = std::max(worst_formula, std::fabs(kappa_mag(sine, s) - expected));
  }
  const bool formula_ok = worst_formula < 1e-8;

  report(5, "curvature oracle equivalence", oracle_ok && formula_ok,
         fmt("max rel oracle dev = %.2e, max magnetic formula dev = %.2e", worst_rel,
             worst_formula));
}

// 6. Hill/Riccati suite: Wronskians, constant-curvature conjugate times,
// hyperbolic y+ estimate.
void criterion_6() {
  double worst_wronskian = 0.0;
  bool times_ok = true;
  std::string detail;

  for (const double k : {1.0, 4.0}) {
    const CoZermeloProblem pb =
        k == 1.0 ? CoZermeloProblem::riemannian(ConformalSurface::sphere())
                 : CoZermeloProblem::riemannian(ConformalSurface::round_sphere(k));
    const double expected = kPi / std::sqrt(k);
    const JacobiArc arc = jacobi_solve(pb, {{0.4, 0.2}, 0.9}, expected * 1.5);
    worst_wronskian = std::max(worst_wronskian, arc.wronskian_drift);
    const ConjugateReport conj = first_conjugate_time(pb, {{0.4, 0.2}, 0.9}, expected * 1.5);
    const bool hit = conj.first_conjugate_time &&
                     std::fabs(*conj.first_conjugate_time - expected) < 1e-6;
    times_ok = times_ok && hit;
    if (k == 4.0 && conj.first_conjugate_time)
      detail = fmt("t*(k=4) dev = %.2e", std::fabs(*conj.first_conjugate_time - expected));
  }

  // Flat arc to T = 100 and hyperbolic arc to T = 40.
  {
    auto flat = ConformalSurface::flat_torus();
    const CoZermeloProblem pb(flat, DriftSpec::constant(DriftKind::OneForm, 0.5, 0.0));
    const JacobiArc arc = jacobi_solve(pb, {{1.0, 1.0}, 0.7}, 100.0);
    worst_wronskian = std::max(worst_wronskian, arc.wronskian_drift);
  }
  const CoZermeloProblem disk =
      CoZermeloProblem::riemannian(ConformalSurface::hyperbolic_disk());
  {
    const JacobiArc arc = jacobi_solve(disk, {{0.0, 0.0}, 0.3}, 40.0);
    worst_wronskian = std::max(worst_wronskian, arc.wronskian_drift);
  }
  const RiccatiEstimate est = riccati_yplus(disk, {{0.0, 0.0}, 0.3}, 40.0, 1e-6);
  const bool riccati_ok = std::fabs(est.estimate - 1.0) < 1e-6 && est.monotone && est.converged;

  const bool wronskian_ok = worst_wronskian < 1e-8;
  report(6, "Hill/Riccati suite", wronskian_ok && times_ok && riccati_ok,
         fmt("max Wronskian drift = %.2e, |y+ - 1| = %.2e", worst_wronskian,
             std::fabs(est.estimate - 1.0)) +
             (detail.empty() ? "" : ", " + detail));
}

// 7. Inequality verdict over a randomized torus drift corpus.
void criterion_7() {
  auto flat = ConformalSurface::flat_torus();
  const QuadratureGrid grid = QuadratureGrid::for_chart(flat->chart(), 48, 48, 48);
  bool ok = true;
  double min_lhs = 1e300;
  for (int trial = 0; trial < 10; ++trial) {
    SplitMix64 rng(707, trial);
    const double a1 = 0.15 + 0.4 * rng.uniform();
    const double a2 = 0.15 + 0.4 * rng.uniform();
    const double p1 = rng.uniform() * kTwoPi, p2 = rng.uniform() * kTwoPi;
    const double p3 = rng.uniform() * kTwoPi, p4 = rng.uniform() * kTwoPi;
    DriftSpec d;
    d.kind = DriftKind::OneForm;
    d.comp1 = [a1, p1, p2](Vec2 q) {
      const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
      return a1 * sin(x + p1) * cos(y + p2);
    };
    d.comp2 = [a2, p3, p4](Vec2 q) {
      const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
      return a2 * cos(x + p3) * sin(y + p4);
    };
    const CoZermeloProblem pb(flat, d);  // sup norm <= 0.55 sqrt2 < 0.8
    validate_drift(*flat, d);

    double max_omega = 0.0;
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j)
        max_omega = std::max(
            max_omega, std::fabs(omega(*flat, d, {i * kTwoPi / 32, j * kTwoPi / 32})));

    const GaussBonnetReport gb = gauss_bonnet_report(pb, grid);
    min_lhs = std::min(min_lhs, gb.lhs_cozermelo);
    ok = ok && gb.lhs_cozermelo >= -1e-4;
    if (max_omega > 1e-6) ok = ok && gb.lhs_cozermelo > 1e-6;
  }
  report(7, "Gauss-Bonnet inequality over random drifts", ok,
         fmt("min lhs over corpus = %.6f", min_lhs));
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
