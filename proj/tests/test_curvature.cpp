#include <doctest.h>

#include <cmath>

#include "znav/curvature.hpp"
#include "znav/ode.hpp"
#include "test_helpers.hpp"

using namespace znav;
using namespace znav_test;

namespace {

CoZermeloProblem bumpy_problem(double famp = 0.25) {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(famp));
  return CoZermeloProblem(surf, trig_drift(DriftKind::OneForm, 0.4, 0.35, 0.3, 0.1, 0.6, 0.2));
}

// phi evaluated at flow time t (both signs), integrating the co-Zermelo
// field itself; used as the flow-based oracle for S(phi).
double flow_phi(const CoZermeloProblem& pb, const FiberPoint& start, double t) {
  std::vector<double> y{start.q.x, start.q.y, start.theta};
  if (t != 0.0) {
    const double sign = t > 0 ? 1.0 : -1.0;
    const OdeRhs rhs = [&pb, sign](double, const double* s, double* dy) {
      const CoZermeloVelocity v = cozermelo_field(pb, {{s[0], s[1]}, s[2]});
      dy[0] = sign * v.qdot.x;
      dy[1] = sign * v.qdot.y;
      dy[2] = sign * v.thetadot;
    };
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-12;
    integrate_ode(rhs, 0.0, std::fabs(t), y, opts);
  }
  return phi(*pb.metric, pb.drift, y[2], {y[0], y[1]});
}

}  // namespace

TEST_CASE("magnetic curvature reduces to Gaussian curvature for closed drifts") {
  // Constant components on the flat torus are closed.
  const CoZermeloProblem flat(ConformalSurface::flat_torus(),
                              DriftSpec::constant(DriftKind::OneForm, 0.3, 0.2));
  SplitMix64 rng(73);
  for (int k = 0; k < 20; ++k) {
    const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng), rng.uniform() * kTwoPi};
    CHECK(kappa_mag(flat, s) == doctest::Approx(0.0).epsilon(1e-12));
  }

  // On a curved surface take the exact form Upsilon = 0.3 d(sin x cos y).
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.3));
  DriftSpec d;
  d.kind = DriftKind::OneForm;
  d.comp1 = [surf](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return surf->emf_jet(q) * (0.3 * cos(x) * cos(y));
  };
  d.comp2 = [surf](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return surf->emf_jet(q) * (-0.3 * sin(x) * sin(y));
  };
  const CoZermeloProblem pb(surf, d);
  for (int k = 0; k < 20; ++k) {
    const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng), rng.uniform() * kTwoPi};
    const double kg = surf->gaussian_curvature(s.q);
    CHECK(kappa_mag(pb, s) == doctest::Approx(kg).epsilon(1e-10));
  }
}

TEST_CASE("magnetic curvature closed form on the flat torus") {
  auto flat = ConformalSurface::flat_torus();
  const double eps = 0.3;
  const CoZermeloProblem pb(flat, sine_form_drift(eps));
  SplitMix64 rng(79);
  for (int k = 0; k < 100; ++k) {
    const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng), rng.uniform() * kTwoPi};
    const double expected =
        eps * eps * std::cos(s.q.x) * std::cos(s.q.x) + eps * std::sin(s.theta) * std::sin(s.q.x);
    CHECK(std::fabs(kappa_mag(pb, s) - expected) < 1e-8);
  }
}

TEST_CASE("magnetic curvature of the round sphere with zero drift") {
  const CoZermeloProblem pb = CoZermeloProblem::riemannian(ConformalSurface::sphere());
  SplitMix64 rng(83);
  for (int k = 0; k < 20; ++k) {
    const FiberPoint s{random_point({-1.5, 1.5, -1.5, 1.5}, rng), rng.uniform() * kTwoPi};
    CHECK(kappa_mag(pb, s) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("L-term: derived coordinate form against the numeric commutator") {
  const CoZermeloProblem pb = bumpy_problem();
  SplitMix64 rng(89);
  for (int k = 0; k < 15; ++k) {
    const FiberPoint s{random_point({0.3, 6.0, 0.3, 6.0}, rng), rng.uniform() * kTwoPi};
    const FiberPointData d = fiber_point_data(pb, s.q);
    const double analytic = d.lterm(s.theta);
    const double numeric = kappa_mag_lterm_numeric(pb, s);
    CHECK(std::fabs(analytic - numeric) < 1e-5);
  }
}

TEST_CASE("Schwarzian correction vanishes for rigid cases") {
  auto flat = ConformalSurface::flat_torus();
  const CoZermeloProblem constant(flat, DriftSpec::constant(DriftKind::OneForm, 0.5, 0.1));
  const CoZermeloProblem riemannian = CoZermeloProblem::riemannian(flat);
  SplitMix64 rng(97);
  for (int k = 0; k < 20; ++k) {
    const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng), rng.uniform() * kTwoPi};
    CHECK(schwarzian(constant, s) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(schwarzian(riemannian, s) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("Schwarzian correction against the flow-based finite difference") {
  auto flat = ConformalSurface::flat_torus();
  const CoZermeloProblem pb(flat, sine_form_drift(0.4));
  const auto check_at = [&](const FiberPoint& s) {
    const double h = 0.05;
    const double f2p = flow_phi(pb, s, 2 * h), f1p = flow_phi(pb, s, h);
    const double f0 = flow_phi(pb, s, 0.0);
    const double f1m = flow_phi(pb, s, -h), f2m = flow_phi(pb, s, -2 * h);
    const double d1 = (-f2p + 8 * f1p - 8 * f1m + f2m) / (12 * h);
    const double d2 = (-f2p + 16 * f1p - 30 * f0 + 16 * f1m - f2m) / (12 * h * h);
    const double oracle = f0 * 0.5 * d2 - 0.25 * d1 * d1;
    CHECK(std::fabs(schwarzian(pb, s) - oracle) < 1e-5);
  };
  check_at({{0.0, 0.0}, 0.0});
  check_at({{0.7, 1.3}, 0.9});
  check_at({{2.1, 4.0}, 3.9});

  // Same oracle on a curved surface.
  const CoZermeloProblem curved = bumpy_problem(0.2);
  const double h = 0.04;
  const FiberPoint s{{1.1, 2.3}, 2.2};
  const double f2p = flow_phi(curved, s, 2 * h), f1p = flow_phi(curved, s, h);
  const double f0 = flow_phi(curved, s, 0.0);
  const double f1m = flow_phi(curved, s, -h), f2m = flow_phi(curved, s, -2 * h);
  const double d1 = (-f2p + 8 * f1p - 8 * f1m + f2m) / (12 * h);
  const double d2 = (-f2p + 16 * f1p - 30 * f0 + 16 * f1m - f2m) / (12 * h * h);
  const double oracle = f0 * 0.5 * d2 - 0.25 * d1 * d1;
  CHECK(std::fabs(schwarzian(curved, s) - oracle) < 1e-5);
}

TEST_CASE("co-Zermelo curvature: Riemannian reduction and flat equality case") {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.3));
  const CoZermeloProblem riem = CoZermeloProblem::riemannian(surf);
  SplitMix64 rng(101);
  for (int k = 0; k < 25; ++k) {
    const Vec2 q = random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng);
    const double kg = surf->gaussian_curvature(q);
    const FiberPointData d = fiber_point_data(riem, q);
    double lo = 1e300, hi = -1e300;
    for (int m = 0; m < 32; ++m) {
      const double val = d.kappa_cozermelo(m * kTwoPi / 32);
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    CHECK(hi - lo < 1e-9);  // theta-independent
    CHECK(std::fabs(0.5 * (hi + lo) - kg) < 1e-8);
  }

  auto flat = ConformalSurface::flat_torus();
  for (const double c : {0.2, 0.5, 0.8}) {
    const CoZermeloProblem pb(flat, DriftSpec::constant(DriftKind::OneForm, c, 0.0));
    for (int k = 0; k < 25; ++k) {
      const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng),
                         rng.uniform() * kTwoPi};
      CHECK(std::fabs(kappa_cozermelo(pb, s)) < 1e-8);
    }
  }
}

TEST_CASE("reparametrization identity kappa phi^2 + S = kappa_mag") {
  const CoZermeloProblem pb = bumpy_problem();
  SplitMix64 rng(103);
  for (int k = 0; k < 1000; ++k) {
    const Vec2 q = random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng);
    const double theta = rng.uniform() * kTwoPi;
    const FiberPointData d = fiber_point_data(pb, q);
    const double ph = d.phi(theta);
    const double lhs = d.kappa_cozermelo(theta) * ph * ph + d.schwarzian(theta);
    CHECK(std::fabs(lhs - d.kappa_mag(theta)) < 1e-8);
  }
}

TEST_CASE("bracket oracle on Riemannian instances") {
  const CoZermeloProblem sphere = CoZermeloProblem::riemannian(ConformalSurface::sphere());
  const Field3 hs = cozermelo_field3(sphere);
  const Field3 vs = cozermelo_vertical_field3(sphere);
  SplitMix64 rng(107);
  for (int k = 0; k < 10; ++k) {
    const Vec3 p{-1.0 + 2.0 * rng.uniform(), -1.0 + 2.0 * rng.uniform(),
                 rng.uniform() * kTwoPi};
    const OracleResult r = curvature_bracket_oracle(hs, vs, p);
    CHECK(std::fabs(r.kappa - 1.0) < 1e-3);
    CHECK(r.residual_h < 1e-3);
    CHECK(r.residual_transverse < 1e-3);
  }

  const CoZermeloProblem flat = CoZermeloProblem::riemannian(ConformalSurface::flat_torus());
  const Field3 hf = cozermelo_field3(flat);
  const Field3 vf = cozermelo_vertical_field3(flat);
  for (int k = 0; k < 5; ++k) {
    const Vec3 p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const OracleResult r = curvature_bracket_oracle(hf, vf, p);
    CHECK(std::fabs(r.kappa) < 1e-6);
  }
}

TEST_CASE("bracket oracle agrees with the closed form") {
  SplitMix64 rng(109);

  const CoZermeloProblem sine(ConformalSurface::flat_torus(), sine_form_drift(0.3));
  const Field3 h1 = cozermelo_field3(sine);
  const Field3 v1 = cozermelo_vertical_field3(sine);
  for (int k = 0; k < 20; ++k) {
    const Vec3 p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const double closed = kappa_cozermelo(sine, {{p.x, p.y}, p.t});
    const OracleResult r = curvature_bracket_oracle(h1, v1, p);
    CHECK(std::fabs(r.kappa - closed) / std::max(1.0, std::fabs(closed)) < 1e-3);
  }

  const CoZermeloProblem curved = bumpy_problem();
  const Field3 h2 = cozermelo_field3(curved);
  const Field3 v2 = cozermelo_vertical_field3(curved);
  for (int k = 0; k < 20; ++k) {
    const Vec3 p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const double closed = kappa_cozermelo(curved, {{p.x, p.y}, p.t});
    const OracleResult r = curvature_bracket_oracle(h2, v2, p);
    CHECK(std::fabs(r.kappa - closed) / std::max(1.0, std::fabs(closed)) < 1e-3);
    CHECK(r.residual_h < 1e-3);
    CHECK(r.residual_transverse < 1e-3);
  }
}

TEST_CASE("Zermelo curvature via the dual problem") {
  auto flat = ConformalSurface::flat_torus();
  // Zero drift: Gaussian curvature.
  const ZermeloProblem riem(flat, DriftSpec::zero(DriftKind::VectorField));
  CHECK(kappa_zermelo(riem, {{1.0, 2.0}, 0.7}) == doctest::Approx(0.0).epsilon(1e-10));

  const ZermeloProblem sphere_riem(ConformalSurface::sphere(),
                                   DriftSpec::zero(DriftKind::VectorField));
  CHECK(kappa_zermelo(sphere_riem, {{0.3, 0.4}, 1.0}) == doctest::Approx(1.0).epsilon(1e-10));

  // Flat constant drift: the equality case, kappa = 0.
  const ZermeloProblem pb(flat, DriftSpec::constant(DriftKind::VectorField, 0.5, 0.0));
  const DualCoZermelo dual = dualize_zermelo(pb);
  SplitMix64 rng(113);
  for (int k = 0; k < 20; ++k) {
    const FiberPoint s{random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng), rng.uniform() * kTwoPi};
    CHECK(std::fabs(kappa_zermelo(pb, dual, s)) < 1e-8);
  }
}

TEST_CASE("orientation flip negates Omega and theta but keeps kappa") {
  auto flat = ConformalSurface::flat_torus();
  const double eps = 0.35;
  const CoZermeloProblem pb(flat, sine_form_drift(eps));

  // Same metric with the opposite orientation: frame (e1, -e2).
  auto flipped_metric = std::make_shared<FrameMetric>(torus_chart(), [](Vec2) {
    FrameJets f;
    f.e1x = Jet2::constant(1.0);
    f.e1y = Jet2::constant(0.0);
    f.e2x = Jet2::constant(0.0);
    f.e2y = Jet2::constant(-1.0);
    return f;
  });
  DriftSpec flipped_drift;
  flipped_drift.kind = DriftKind::OneForm;
  flipped_drift.comp1 = pb.drift.comp1;
  flipped_drift.comp2 = [eps](Vec2 q) { return -eps * sin(Jet2::var_x(q.x)); };
  const CoZermeloProblem flipped(flipped_metric, flipped_drift);

  SplitMix64 rng(127);
  for (int k = 0; k < 25; ++k) {
    const Vec2 q = random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng);
    const double theta = rng.uniform() * kTwoPi;
    CHECK(omega(*flipped.metric, flipped.drift, q) ==
          doctest::Approx(-omega(*pb.metric, pb.drift, q)).epsilon(1e-12));
    CHECK(kappa_cozermelo(flipped, {q, -theta}) ==
          doctest::Approx(kappa_cozermelo(pb, {q, theta})).epsilon(1e-9));
  }
}

TEST_CASE("curvature field kinds") {
  const CoZermeloProblem pb = bumpy_problem();
  const CurvatureField gauss = make_curvature_field(pb, CurvatureKind::Gaussian);
  const CurvatureField coz = make_curvature_field(pb, CurvatureKind::CoZermelo);
  SplitMix64 rng(131);
  const Vec2 q = random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng);
  // Gaussian kind is theta-independent.
  const double a = gauss.eval({q, 0.3}), b = gauss.eval({q, 4.5});
  CHECK(std::fabs(a - b) < 1e-10);
  CHECK(coz.eval({q, 0.3}) == doctest::Approx(kappa_cozermelo(pb, {q, 0.3})));
}
