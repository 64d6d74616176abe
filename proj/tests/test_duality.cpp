#include <doctest.h>

#include <cmath>

#include "znav/curvature.hpp"
#include "znav/duality.hpp"
#include "test_helpers.hpp"

using namespace znav;
using namespace znav_test;

namespace {

// A vector drift on the torus bounded away from zero (min norm ~0.2).
DriftSpec offset_drift(DriftKind kind) {
  DriftSpec d;
  d.kind = kind;
  d.comp1 = [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.3 + 0.1 * sin(x) * cos(y);
  };
  d.comp2 = [](Vec2 q) { return 0.15 * cos(Jet2::var_x(q.x)); };
  return d;
}

}  // namespace

TEST_CASE("zero drift dualizes trivially") {
  auto flat = ConformalSurface::flat_torus();
  const ZermeloProblem pb(flat, DriftSpec::zero(DriftKind::VectorField));
  const DualCoZermelo dual = dualize_zermelo(pb);
  CHECK(dual.zero_drift);
  CHECK(dual.problem.metric == pb.metric);
  const DualityReport rep = verify_duality(pb, dual, 500, 1e-12);
  CHECK(rep.pass);
}

TEST_CASE("dual of a flat constant drift: coframe, drift form, ellipse") {
  auto flat = ConformalSurface::flat_torus();
  const double c = 0.5;
  const ZermeloProblem pb(flat, DriftSpec::constant(DriftKind::VectorField, c, 0.0));
  const DualCoZermelo dual = dualize_zermelo(pb);
  const double w = 1.0 - c * c;

  const Vec2 q{1.0, 2.0};
  const auto [f1, f2] = dual.problem.metric->coframe_at(q);
  CHECK(f1.p1 == doctest::Approx(1.0 / w).epsilon(1e-12));     // e~1* = dx/(1-c^2)
  CHECK(f1.p2 == doctest::Approx(0.0));
  CHECK(f2.p1 == doctest::Approx(0.0));
  CHECK(f2.p2 == doctest::Approx(1.0 / std::sqrt(w)).epsilon(1e-12));

  // Drift form in chart components: -c dx / (1-c^2).
  const Vec2 comps = dual.problem.drift.components(q);
  const Cov2 upsilon =
      dual.problem.metric->covector_from_frame_components(q, comps.x, comps.y);
  CHECK(upsilon.p1 == doctest::Approx(-c / w).epsilon(1e-12));
  CHECK(upsilon.p2 == doctest::Approx(0.0));

  // |Y~|_{g~} = |X|_g.
  CHECK(dual.problem.metric->norm_covector(q, upsilon) == doctest::Approx(c).epsilon(1e-10));

  const EllipseFields ell = dual.ellipse(q);
  CHECK(ell.semimajor == doctest::Approx(1.0 / w));
  CHECK(ell.semiminor == doctest::Approx(1.0 / std::sqrt(w)));
  CHECK(ell.focal == doctest::Approx(c / w));

  const DualityReport rep = verify_duality(pb, dual, 1000, 1e-10, 7);
  CHECK(rep.pass);
  CHECK(rep.max_abs_error < 1e-10);
}

TEST_CASE("duality on a curved surface with varying drift") {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.25));
  const ZermeloProblem pb(surf, offset_drift(DriftKind::VectorField));
  const DualCoZermelo dual = dualize_zermelo(pb);
  const DualityReport rep = verify_duality(pb, dual, 1000, 1e-9, 11);
  CHECK(rep.pass);

  // Norm preservation and positive definiteness pointwise.
  SplitMix64 rng(13);
  for (int k = 0; k < 40; ++k) {
    const Vec2 q = random_point({0.0, kTwoPi, 0.0, kTwoPi}, rng);
    const Vec2 comps = dual.problem.drift.components(q);
    const Cov2 upsilon =
        dual.problem.metric->covector_from_frame_components(q, comps.x, comps.y);
    const double lhs = dual.problem.metric->norm_covector(q, upsilon);
    const double rhs = pb.drift.norm(q);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    const Vec2 v{-1.0 + 2.0 * rng.uniform(), -1.0 + 2.0 * rng.uniform()};
    if (v.x != 0.0 || v.y != 0.0) CHECK(dual.problem.metric->pair_vectors(q, v, v) > 0.0);
  }
  CHECK(dual.source_metric == pb.metric);
}

TEST_CASE("co-Zermelo problems dualize to Zermelo problems") {
  auto flat = ConformalSurface::flat_torus();
  const double c = 0.4;
  const CoZermeloProblem pb(flat, DriftSpec::constant(DriftKind::OneForm, c, 0.0));
  const DualZermelo dual = dualize_cozermelo(pb);
  const DualityReport rep = verify_duality(pb, dual, 1000, 1e-10, 3);
  CHECK(rep.pass);

  // |X~|_{g~} = c.
  const Vec2 q{0.5, 0.5};
  const Vec2 comps = dual.problem.drift.components(q);
  CHECK(std::hypot(comps.x, comps.y) == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("round trip: dual of the dual has the original Hamiltonian") {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.2));
  const ZermeloProblem pb(surf, offset_drift(DriftKind::VectorField));
  const DualCoZermelo dual = dualize_zermelo(pb);
  const DualZermelo roundtrip = dualize_cozermelo(dual.problem);
  const DualityReport rep = verify_duality(
      [&pb](const CotangentPoint& cp) { return h_zermelo(pb, cp); },
      [&roundtrip](const CotangentPoint& cp) { return h_zermelo(roundtrip.problem, cp); },
      chart_rect(surf->chart()), 500, 1e-9, 17);
  CHECK(rep.pass);
}

TEST_CASE("rotational drift on the sphere, annular working region") {
  auto sph = ConformalSurface::sphere();
  DriftSpec d;
  d.kind = DriftKind::VectorField;
  // 0.3 times the unit field along latitude circles: components
  // (-0.3 y / r, 0.3 x / r) in the stereographic frame.
  d.comp1 = [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return -0.3 * y / sqrt(x * x + y * y);
  };
  d.comp2 = [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.3 * x / sqrt(x * x + y * y);
  };
  const ZermeloProblem pb(sph, d);
  DualizeOptions opts;
  opts.region = Rect{0.4, 1.4, 0.4, 1.4};
  const DualCoZermelo dual = dualize_zermelo(pb, opts);
  const DualityReport rep = verify_duality(pb, dual, 1000, 1e-9, 5, opts.region);
  CHECK(rep.pass);
}

TEST_CASE("flow equivalence: dual extremals share the base projection") {
  auto flat = ConformalSurface::flat_torus();
  const ZermeloProblem pb(flat, DriftSpec::constant(DriftKind::VectorField, 0.5, 0.0));
  const DualCoZermelo dual = dualize_zermelo(pb);

  SplitMix64 rng(29);
  const std::vector<double> times{0.5, 1.0, 2.0, 3.5, 5.0};
  for (int k = 0; k < 4; ++k) {
    CotangentPoint cp{{1.0, 2.0}, {0.3 + rng.uniform(), 0.3 + rng.uniform()}};
    cp.p = (1.0 / h_zermelo(pb, cp)) * cp.p;
    const ExtremalTrajectory a = integrate_extremal_zermelo(pb, cp, 5.0, {}, times);
    const FiberPoint dual_start = fiber_of(dual.problem, cp, 1e-7);
    const ExtremalTrajectory b = integrate_extremal(dual.problem, dual_start, 5.0, {}, times);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
      CHECK(std::fabs(a.samples[i].state.q.x - b.samples[i].state.q.x) < 1e-6);
      CHECK(std::fabs(a.samples[i].state.q.y - b.samples[i].state.q.y) < 1e-6);
    }
  }
}

TEST_CASE("flow equivalence on a curved surface") {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.2));
  const ZermeloProblem pb(surf, offset_drift(DriftKind::VectorField));
  const DualCoZermelo dual = dualize_zermelo(pb);
  const std::vector<double> times{1.0, 2.5, 4.0, 5.0};
  CotangentPoint cp{{2.5, 1.5}, {0.8, -0.5}};
  cp.p = (1.0 / h_zermelo(pb, cp)) * cp.p;
  const ExtremalTrajectory a = integrate_extremal_zermelo(pb, cp, 5.0, {}, times);
  const FiberPoint dual_start = fiber_of(dual.problem, cp, 1e-7);
  const ExtremalTrajectory b = integrate_extremal(dual.problem, dual_start, 5.0, {}, times);
  REQUIRE(a.samples.size() == b.samples.size());
  for (size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(std::fabs(a.samples[i].state.q.x - b.samples[i].state.q.x) < 1e-6);
    CHECK(std::fabs(a.samples[i].state.q.y - b.samples[i].state.q.y) < 1e-6);
  }
}

TEST_CASE("curvature transfers across duality") {
  auto surf = ConformalSurface::from_f(torus_chart(), bumpy_f(0.15));
  const ZermeloProblem pb(surf, offset_drift(DriftKind::VectorField));
  const DualCoZermelo dual = dualize_zermelo(pb);
  const Field3 h3 = zermelo_field3(pb);
  const Field3 v3 = zermelo_vertical_field3(pb, dual);
  SplitMix64 rng(31);
  for (int k = 0; k < 10; ++k) {
    const FiberPoint s{random_point({0.5, 5.8, 0.5, 5.8}, rng), rng.uniform() * kTwoPi};
    const double closed = kappa_zermelo(pb, dual, s);
    const OracleResult oracle = curvature_bracket_oracle(h3, v3, {s.q.x, s.q.y, s.theta});
    const double scale = std::max(1.0, std::fabs(closed));
    CHECK(std::fabs(oracle.kappa - closed) / scale < 1e-3);
  }
}

TEST_CASE("dualize rejects bad drifts") {
  auto flat = ConformalSurface::flat_torus();
  // A drift vanishing at a pre-check sample point (the zero-crossing check
  // is a sampling heuristic on the default 64x64 grid).
  DriftSpec zeros_drift;
  zeros_drift.kind = DriftKind::VectorField;
  const double x_star = 5.5 * kTwoPi / 64.0;
  zeros_drift.comp1 = [x_star](Vec2 q) { return 0.4 * sin(Jet2::var_x(q.x) - x_star); };
  zeros_drift.comp2 = [](Vec2) { return Jet2::constant(0.0); };
  const ZermeloProblem zeros(flat, zeros_drift);
  CHECK_THROWS_AS(dualize_zermelo(zeros), ValidationError);
  // Norm >= 1.
  const ZermeloProblem fast(flat, DriftSpec::constant(DriftKind::VectorField, 1.1, 0.0));
  CHECK_THROWS_AS(dualize_zermelo(fast), ValidationError);
}
