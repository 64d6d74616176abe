#include "znav/curvature.hpp"

#include <cmath>

namespace znav {

FiberPointData fiber_point_data(const CoZermeloProblem& pb, Vec2 q) {
  FiberPointData d;
  d.q = pb.metric->chart().wrap(q);
  d.fr = pb.metric->frame_jets(d.q);
  const StructuralConstants sc = pb.metric->structural_constants(d.q);
  d.c1 = sc.c1;
  d.c2 = sc.c2;
  d.kg = pb.metric->gaussian_curvature(d.q);
  d.om = omega_jet(*pb.metric, pb.drift, d.q);
  d.u1 = pb.drift.comp1(d.q);
  d.u2 = pb.drift.comp2(d.q);
  return d;
}

double FiberPointData::phi(double theta) const {
  return 1.0 + u1.v * std::cos(theta) + u2.v * std::sin(theta);
}

double FiberPointData::lterm(double theta) const {
  const double lo1 = fr.e1x.v * om.gx + fr.e1y.v * om.gy;
  const double lo2 = fr.e2x.v * om.gx + fr.e2y.v * om.gy;
  return std::sin(theta) * lo1 - std::cos(theta) * lo2;
}

double FiberPointData::kappa_mag(double theta) const {
  return kg + om.v * om.v + lterm(theta);
}

double FiberPointData::flow_dphi(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  const double ph = 1.0 + u1.v * c + u2.v * s;
  const double px = u1.gx * c + u2.gx * s;
  const double py = u1.gy * c + u2.gy * s;
  const double pt = -u1.v * s + u2.v * c;
  const double fx = (c * fr.e1x.v + s * fr.e2x.v) / ph;
  const double fy = (c * fr.e1y.v + s * fr.e2y.v) / ph;
  const double ft = (c1.v * c + c2.v * s + om.v) / ph;
  return fx * px + fy * py + ft * pt;
}

double FiberPointData::schwarzian(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  const double ph = 1.0 + u1.v * c + u2.v * s;

  // phi partials in (x, y, theta).
  const double P[3] = {u1.gx * c + u2.gx * s, u1.gy * c + u2.gy * s, -u1.v * s + u2.v * c};
  const double PPxx = u1.gxx * c + u2.gxx * s;
  const double PPxy = u1.gxy * c + u2.gxy * s;
  const double PPyy = u1.gyy * c + u2.gyy * s;
  const double PPxt = -u1.gx * s + u2.gx * c;
  const double PPyt = -u1.gy * s + u2.gy * c;
  const double PPtt = -u1.v * c - u2.v * s;
  const double PP[3][3] = {{PPxx, PPxy, PPxt}, {PPxy, PPyy, PPyt}, {PPxt, PPyt, PPtt}};

  // Numerators N = phi * field and their partials.
  const double N[3] = {c * fr.e1x.v + s * fr.e2x.v, c * fr.e1y.v + s * fr.e2y.v,
                       c1.v * c + c2.v * s + om.v};
  const double dN[3][3] = {
      {c * fr.e1x.gx + s * fr.e2x.gx, c * fr.e1x.gy + s * fr.e2x.gy, -s * fr.e1x.v + c * fr.e2x.v},
      {c * fr.e1y.gx + s * fr.e2y.gx, c * fr.e1y.gy + s * fr.e2y.gy, -s * fr.e1y.v + c * fr.e2y.v},
      {c1.gx * c + c2.gx * s + om.gx, c1.gy * c + c2.gy * s + om.gy, -c1.v * s + c2.v * c}};

  double F[3], dF[3][3];
  for (int i = 0; i < 3; ++i) F[i] = N[i] / ph;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dF[i][j] = (dN[i][j] - F[i] * P[j]) / ph;

  double l1 = 0.0;
  for (int i = 0; i < 3; ++i) l1 += F[i] * P[i];
  double l2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    double gj = 0.0;
    for (int i = 0; i < 3; ++i) gj += dF[i][j] * P[i] + F[i] * PP[i][j];
    l2 += F[j] * gj;
  }
  return ph * (0.5 * l2) - (0.5 * l1) * (0.5 * l1);
}

double FiberPointData::kappa_cozermelo(double theta) const {
  const double ph = phi(theta);
  return (kappa_mag(theta) - schwarzian(theta)) / (ph * ph);
}

double kappa_mag(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  return fiber_point_data(pb, q).kappa_mag(s.theta);
}

double schwarzian(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  return fiber_point_data(pb, q).schwarzian(s.theta);
}

double kappa_cozermelo(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  return fiber_point_data(pb, q).kappa_cozermelo(s.theta);
}

double kappa_zermelo(const ZermeloProblem& pb, const DualCoZermelo& dual, const FiberPoint& s) {
  const CotangentPoint cp = covector_of(pb, s);
  const FiberPoint dual_fiber = fiber_of(dual.problem, cp, 1e-7);
  return kappa_cozermelo(dual.problem, dual_fiber);
}

double kappa_zermelo(const ZermeloProblem& pb, const FiberPoint& s) {
  return kappa_zermelo(pb, dualize_zermelo(pb), s);
}

// ---- bracket oracle ----

namespace {

double norm3(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.t * a.t); }
Vec3 cross3(Vec3 a, Vec3 b) {
  return {a.y * b.t - a.t * b.y, a.t * b.x - a.x * b.t, a.x * b.y - a.y * b.x};
}

// Fourth-order central difference of a whole field along one coordinate.
Vec3 field_deriv4(const Field3& f, Vec3 p, int dim, double h) {
  const auto at = [&](double delta) {
    Vec3 s = p;
    (dim == 0 ? s.x : dim == 1 ? s.y : s.t) += delta;
    return f(s);
  };
  const Vec3 f2p = at(2 * h), f1p = at(h), f1m = at(-h), f2m = at(-2 * h);
  const double inv = 1.0 / (12.0 * h);
  return {(-f2p.x + 8.0 * f1p.x - 8.0 * f1m.x + f2m.x) * inv,
          (-f2p.y + 8.0 * f1p.y - 8.0 * f1m.y + f2m.y) * inv,
          (-f2p.t + 8.0 * f1p.t - 8.0 * f1m.t + f2m.t) * inv};
}

}  // namespace

Vec3 numeric_bracket(const Field3& a, const Field3& b, const Vec3& p, double step) {
  const Vec3 av = a(p), bv = b(p);
  const double wa[3] = {av.x, av.y, av.t};
  const double wb[3] = {bv.x, bv.y, bv.t};
  Vec3 out{};
  for (int dim = 0; dim < 3; ++dim) {
    const Vec3 db = field_deriv4(b, p, dim, step);
    const Vec3 da = field_deriv4(a, p, dim, step);
    out.x += wa[dim] * db.x - wb[dim] * da.x;
    out.y += wa[dim] * db.y - wb[dim] * da.y;
    out.t += wa[dim] * db.t - wb[dim] * da.t;
  }
  return out;
}

OracleResult curvature_bracket_oracle(const Field3& field_h, const Field3& field_v, Vec3 state,
                                      const OracleOptions& opts) {
  const Field3 inner = [&](const Vec3& p) {
    return numeric_bracket(field_v, field_h, p, opts.step_inner);
  };
  const Vec3 dbl = numeric_bracket(field_h, inner, state, opts.step_outer);

  const Vec3 v = field_v(state);
  const Vec3 h = field_h(state);
  const Vec3 n = cross3(v, h);
  // Solve [v h n] (cv, ch, cn)^T = dbl.
  const double m[3][3] = {{v.x, h.x, n.x}, {v.y, h.y, n.y}, {v.t, h.t, n.t}};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::fabs(det) < 1e-300) throw NumericalError("bracket oracle: degenerate (v, h) frame");
  const double r[3] = {dbl.x, dbl.y, dbl.t};
  double sol[3];
  for (int k = 0; k < 3; ++k) {
    double mm[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mm[i][j] = (j == k) ? r[i] : m[i][j];
    sol[k] = (mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1]) -
              mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0]) +
              mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0])) /
             det;
  }
  OracleResult res;
  res.kappa = sol[0];
  const double denom = std::max(std::fabs(sol[0]) * norm3(v), 1e-12);
  res.residual_h = std::fabs(sol[1]) * norm3(h) / denom;
  res.residual_transverse = std::fabs(sol[2]) * norm3(n) / denom;
  return res;
}

namespace {

// Raw co-Zermelo velocity without domain checks; fields are total functions.
Vec3 cozermelo_velocity_raw(const Metric& metric, const DriftSpec& drift, const Vec3& p) {
  const Vec2 q{p.x, p.y};
  const FrameValues fr = metric.frame_at(q);
  const StructuralConstants sc = metric.structural_constants(q);
  const double om = omega(metric, drift, q);
  const Vec2 u = drift.components(q);
  const double c = std::cos(p.t), s = std::sin(p.t);
  const double ph = 1.0 + u.x * c + u.y * s;
  return {(c * fr.e1.x + s * fr.e2.x) / ph, (c * fr.e1.y + s * fr.e2.y) / ph,
          (sc.c1.v * c + sc.c2.v * s + om) / ph};
}

}  // namespace

Field3 cozermelo_field3(const CoZermeloProblem& pb) {
  return [pb](const Vec3& p) { return cozermelo_velocity_raw(*pb.metric, pb.drift, p); };
}

Field3 cozermelo_vertical_field3(const CoZermeloProblem& pb) {
  return [pb](const Vec3& p) -> Vec3 {
    const Vec2 u = pb.drift.components({p.x, p.y});
    const double ph = 1.0 + u.x * std::cos(p.t) + u.y * std::sin(p.t);
    return {0.0, 0.0, std::sqrt(ph)};
  };
}

Field3 riemannian_field3(std::shared_ptr<const Metric> metric) {
  return [metric](const Vec3& p) -> Vec3 {
    const Vec2 q{p.x, p.y};
    const FrameValues fr = metric->frame_at(q);
    const StructuralConstants sc = metric->structural_constants(q);
    const double c = std::cos(p.t), s = std::sin(p.t);
    return {c * fr.e1.x + s * fr.e2.x, c * fr.e1.y + s * fr.e2.y, sc.c1.v * c + sc.c2.v * s};
  };
}

Field3 zermelo_field3(const ZermeloProblem& pb) {
  return [pb](const Vec3& p) -> Vec3 {
    const FiberPoint s{{p.x, p.y}, p.t};
    const CotangentPoint cp = covector_of(pb, s);
    const CanonicalVelocity vel = zermelo_field_canonical(pb, cp);
    // theta is the polar angle of the frame components a_i = <lambda, e_i>;
    // differentiate a along the flow to get thetadot.
    const FrameJets fr = pb.metric->frame_jets(cp.q);
    const Vec2 a = pb.metric->covector_frame_components(cp.q, cp.p);
    const double de1x = fr.e1x.gx * vel.qdot.x + fr.e1x.gy * vel.qdot.y;
    const double de1y = fr.e1y.gx * vel.qdot.x + fr.e1y.gy * vel.qdot.y;
    const double de2x = fr.e2x.gx * vel.qdot.x + fr.e2x.gy * vel.qdot.y;
    const double de2y = fr.e2y.gx * vel.qdot.x + fr.e2y.gy * vel.qdot.y;
    const double da1 = vel.pdot.p1 * fr.e1x.v + vel.pdot.p2 * fr.e1y.v + cp.p.p1 * de1x +
                       cp.p.p2 * de1y;
    const double da2 = vel.pdot.p1 * fr.e2x.v + vel.pdot.p2 * fr.e2y.v + cp.p.p1 * de2x +
                       cp.p.p2 * de2y;
    const double thetadot = (a.x * da2 - a.y * da1) / (a.x * a.x + a.y * a.y);
    return {vel.qdot.x, vel.qdot.y, thetadot};
  };
}

Field3 zermelo_vertical_field3(const ZermeloProblem& pb, const DualCoZermelo& dual) {
  const CoZermeloProblem dual_pb = dual.problem;
  return [pb, dual_pb](const Vec3& p) -> Vec3 {
    const FiberPoint s{{p.x, p.y}, p.t};
    const CotangentPoint cp = covector_of(pb, s);
    const FiberPoint dual_fiber = fiber_of(dual_pb, cp, 1e-6);
    const Vec2 u = dual_pb.drift.components(dual_fiber.q);
    const double ph =
        1.0 + u.x * std::cos(dual_fiber.theta) + u.y * std::sin(dual_fiber.theta);
    // d(theta_polar)/d(theta_dual) by central difference through the shared
    // covector.
    const double dt = 1e-5;
    const auto polar_of = [&](double theta_dual) {
      const CotangentPoint c2 = covector_of(dual_pb, {dual_fiber.q, theta_dual});
      const Vec2 a = pb.metric->covector_frame_components(dual_fiber.q, c2.p);
      return std::atan2(a.y, a.x);
    };
    double t_plus = polar_of(dual_fiber.theta + dt);
    double t_minus = polar_of(dual_fiber.theta - dt);
    double diff = t_plus - t_minus;
    while (diff > kPi) diff -= kTwoPi;
    while (diff < -kPi) diff += kTwoPi;
    return {0.0, 0.0, std::sqrt(ph) * diff / (2.0 * dt)};
  };
}

double kappa_mag_lterm_numeric(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  const Field3 hg = riemannian_field3(pb.metric);
  const Field3 vg = [](const Vec3&) -> Vec3 { return {0.0, 0.0, 1.0}; };
  const Vec3 w = numeric_bracket(hg, vg, {q.x, q.y, s.theta}, 2e-4);
  // Directional derivative of Omega along the base part of [h_g, v_g].
  const auto om_at = [&](double d) {
    return omega(*pb.metric, pb.drift, {q.x + d * w.x, q.y + d * w.y});
  };
  const double h = 1e-5;
  return (-om_at(2 * h) + 8.0 * om_at(h) - 8.0 * om_at(-h) + om_at(-2 * h)) / (12.0 * h);
}

CurvatureField make_curvature_field(const CoZermeloProblem& pb, CurvatureKind kind) {
  CurvatureField out;
  out.kind = kind;
  switch (kind) {
    case CurvatureKind::Gaussian:
      out.eval = [pb](const FiberPoint& s) {
        return pb.metric->gaussian_curvature(pb.metric->require_inside(s.q));
      };
      break;
    case CurvatureKind::Magnetic:
      out.eval = [pb](const FiberPoint& s) { return kappa_mag(pb, s); };
      break;
    case CurvatureKind::CoZermelo:
      out.eval = [pb](const FiberPoint& s) { return kappa_cozermelo(pb, s); };
      break;
    case CurvatureKind::Oracle: {
      const Field3 h = cozermelo_field3(pb);
      const Field3 v = cozermelo_vertical_field3(pb);
      out.eval = [pb, h, v](const FiberPoint& s) {
        const Vec2 q = pb.metric->require_inside(s.q);
        return curvature_bracket_oracle(h, v, {q.x, q.y, s.theta}).kappa;
      };
      break;
    }
  }
  return out;
}

}  // namespace znav
