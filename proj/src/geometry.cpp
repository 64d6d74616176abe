#include "znav/geometry.hpp"

#include <sstream>

namespace znav {

StructuralConstants Metric::structural_constants(Vec2 q) const {
  const FrameJets fr = frame_jets(q);
  // Commutator chart components K = L_{e1} e2 - L_{e2} e1, first order.
  const Jet1 e1x = fr.e1x.val1(), e1y = fr.e1y.val1();
  const Jet1 e2x = fr.e2x.val1(), e2y = fr.e2y.val1();
  const Jet1 kx = e1x * fr.e2x.dx() + e1y * fr.e2x.dy() - (e2x * fr.e1x.dx() + e2y * fr.e1x.dy());
  const Jet1 ky = e1x * fr.e2y.dx() + e1y * fr.e2y.dy() - (e2x * fr.e1y.dx() + e2y * fr.e1y.dy());
  // Solve [e1 e2] (c1, c2)^T = K.
  const Jet1 det = e1x * e2y - e1y * e2x;
  StructuralConstants sc;
  sc.c1 = (kx * e2y - ky * e2x) / det;
  sc.c2 = (e1x * ky - e1y * kx) / det;
  return sc;
}

double Metric::gaussian_curvature(Vec2 q) const {
  const FrameValues fr = frame_at(q);
  const StructuralConstants sc = structural_constants(q);
  const double l1c2 = fr.e1.x * sc.c2.gx + fr.e1.y * sc.c2.gy;
  const double l2c1 = fr.e2.x * sc.c1.gx + fr.e2.y * sc.c1.gy;
  return -sc.c1.v * sc.c1.v - sc.c2.v * sc.c2.v + l1c2 - l2c1;
}

std::pair<Cov2, Cov2> Metric::coframe_at(Vec2 q) const {
  const FrameValues fr = frame_at(q);
  const double det = fr.e1.x * fr.e2.y - fr.e1.y * fr.e2.x;
  const double inv = 1.0 / det;
  const Cov2 f1{fr.e2.y * inv, -fr.e2.x * inv};
  const Cov2 f2{-fr.e1.y * inv, fr.e1.x * inv};
  return {f1, f2};
}

Vec2 Metric::vector_frame_components(Vec2 q, Vec2 v) const {
  const FrameValues fr = frame_at(q);
  const double det = fr.e1.x * fr.e2.y - fr.e1.y * fr.e2.x;
  const double a1 = (v.x * fr.e2.y - v.y * fr.e2.x) / det;
  const double a2 = (fr.e1.x * v.y - fr.e1.y * v.x) / det;
  return {a1, a2};
}

Vec2 Metric::require_inside(Vec2 q) const {
  const Vec2 w = chart().wrap(q);
  if (!chart().contains(w)) {
    std::ostringstream os;
    os << "point (" << q.x << ", " << q.y << ") outside chart domain [" << chart().x0 << ", "
       << chart().x1 << "] x [" << chart().y0 << ", " << chart().y1 << "]";
    throw DomainError(os.str());
  }
  return w;
}

std::shared_ptr<ConformalSurface> ConformalSurface::from_f(Chart chart, ScalarField f) {
  ScalarField emf = [f](Vec2 q) { return exp(-f(q)); };
  return std::shared_ptr<ConformalSurface>(
      new ConformalSurface(chart, std::move(f), std::move(emf)));
}

std::shared_ptr<ConformalSurface> ConformalSurface::from_emf(Chart chart, ScalarField emf) {
  ScalarField f = [emf](Vec2 q) { return -log(emf(q)); };
  return std::shared_ptr<ConformalSurface>(
      new ConformalSurface(chart, std::move(f), std::move(emf)));
}

std::shared_ptr<ConformalSurface> ConformalSurface::from_expression(Chart chart,
                                                                    const Expression& f) {
  return from_f(chart, [f](Vec2 q) { return f.eval_jet(q.x, q.y); });
}

FrameJets ConformalSurface::frame_jets(Vec2 q) const {
  const Jet2 e = emf_(q);
  const Jet2 zero = Jet2::constant(0.0);
  return {e, zero, zero, e};
}

Chart torus_chart() {
  Chart c;
  c.x0 = 0.0;
  c.x1 = kTwoPi;
  c.y0 = 0.0;
  c.y1 = kTwoPi;
  c.periodic_x = c.periodic_y = true;
  c.euler_characteristic = 0;
  return c;
}

Chart sphere_chart() {
  // Wide enough that the stereographic pole guard (surface distance 1e-3,
  // chart radius ~2000) engages before the rectangle does.
  Chart c;
  c.x0 = c.y0 = -4.0e3;
  c.x1 = c.y1 = 4.0e3;
  c.euler_characteristic = 2;
  c.pole_compactification = true;
  return c;
}

Chart disk_chart() {
  Chart c;
  c.x0 = c.y0 = -1.0;
  c.x1 = c.y1 = 1.0;
  c.euler_characteristic = 0;  // open disk; no compact topology attached
  return c;
}

std::shared_ptr<ConformalSurface> ConformalSurface::flat_torus() {
  return from_emf(torus_chart(), [](Vec2) { return Jet2::constant(1.0); });
}

std::shared_ptr<ConformalSurface> ConformalSurface::sphere() {
  return from_emf(sphere_chart(), [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.5 * (1.0 + x * x + y * y);
  });
}

std::shared_ptr<ConformalSurface> ConformalSurface::hyperbolic_disk() {
  return from_emf(disk_chart(), [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.5 * (1.0 - x * x - y * y);
  });
}

std::shared_ptr<ConformalSurface> ConformalSurface::round_sphere(double k) {
  if (!(k > 0)) throw ValidationError("round_sphere needs k > 0");
  return from_emf(sphere_chart(), [k](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 1.0 + (k / 4.0) * (x * x + y * y);
  });
}

}  // namespace znav
