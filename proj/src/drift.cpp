#include "znav/drift.hpp"

#include <cmath>
#include <sstream>

namespace znav {

double drift_angle(const DriftSpec& drift, Vec2 q) {
  const Vec2 c = drift.components(q);
  if (c.x == 0.0 && c.y == 0.0) return 0.0;
  return std::atan2(c.y, c.x);
}

RotatedFrame rotated_frame(const Metric& metric, const DriftSpec& drift, Vec2 q) {
  const FrameValues fr = metric.frame_at(q);
  const Vec2 c = drift.components(q);
  RotatedFrame out;
  double ct = 1.0, st = 0.0;
  if (c.x != 0.0 || c.y != 0.0) {
    const double n = hypot2(c);
    ct = c.x / n;
    st = c.y / n;
    out.theta0 = std::atan2(c.y, c.x);
  }
  out.e1X = ct * fr.e1 + st * fr.e2;
  out.e2X = -1.0 * st * fr.e1 + ct * fr.e2;
  return out;
}

Jet1 omega_jet(const Metric& metric, const DriftSpec& drift, Vec2 q) {
  const FrameJets fr = metric.frame_jets(q);
  const StructuralConstants sc = metric.structural_constants(q);
  const Jet2 u1 = drift.comp1(q);
  const Jet2 u2 = drift.comp2(q);
  const Jet1 l1u2 = fr.e1x.val1() * u2.dx() + fr.e1y.val1() * u2.dy();
  const Jet1 l2u1 = fr.e2x.val1() * u1.dx() + fr.e2y.val1() * u1.dy();
  return -(l1u2 - l2u1 - sc.c1 * u1.val1() - sc.c2 * u2.val1());
}

double omega(const Metric& metric, const DriftSpec& drift, Vec2 q) {
  return omega_jet(metric, drift, q).v;
}

double phi(const Metric& metric, const DriftSpec& drift, double theta, Vec2 q) {
  (void)metric;
  const Vec2 c = drift.components(q);
  const double n2 = dot(c, c);
  if (n2 >= 1.0) {
    std::ostringstream os;
    os << "drift norm " << std::sqrt(n2) << " >= 1 at (" << q.x << ", " << q.y << ")";
    throw ValidationError(os.str());
  }
  return 1.0 + c.x * std::cos(theta) + c.y * std::sin(theta);
}

void validate_drift(const Metric& metric, const DriftSpec& drift, int n) {
  const Chart& ch = metric.chart();
  const double bound = 1.0 - drift.norm_margin;
  double worst = -1.0;
  Vec2 worst_q{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Interior sampling; periodic directions cover the seam at i = 0.
      const double fx = ch.periodic_x ? i / double(n) : (i + 0.5) / double(n);
      const double fy = ch.periodic_y ? j / double(n) : (j + 0.5) / double(n);
      const Vec2 q{ch.x0 + fx * ch.width(), ch.y0 + fy * ch.height()};
      const double nm = drift.norm(q);
      if (nm > worst) {
        worst = nm;
        worst_q = q;
      }
    }
  }
  if (worst > bound) {
    std::ostringstream os;
    os << "drift violates |drift|_g <= " << bound << ": norm " << worst << " at (" << worst_q.x
       << ", " << worst_q.y << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace znav
