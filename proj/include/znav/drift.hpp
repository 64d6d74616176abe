// Drift of a navigation problem: a vector field X or a one-form Upsilon,
// stored as g-orthonormal frame components (comp1, comp2) on the chart.
// Also: the drift angle and rotated frame, the magnetic function Omega
// (d Upsilon = -Omega dV_g) and the fiber weight phi = 1 + comp1 cos(theta)
// + comp2 sin(theta).

#ifndef ZNAV_DRIFT_HPP
#define ZNAV_DRIFT_HPP

#include <functional>
#include <memory>
#include <utility>

#include "znav/geometry.hpp"

namespace znav {

enum class DriftKind { VectorField, OneForm };

struct DriftSpec {
  DriftKind kind = DriftKind::OneForm;
  ScalarField comp1;  // <X, e1>_g resp. <Upsilon, e1>
  ScalarField comp2;
  double norm_margin = 0.02;

  static DriftSpec zero(DriftKind kind = DriftKind::OneForm) {
    DriftSpec d;
    d.kind = kind;
    d.comp1 = [](Vec2) { return Jet2::constant(0.0); };
    d.comp2 = d.comp1;
    return d;
  }
  static DriftSpec constant(DriftKind kind, double a1, double a2, double margin = 0.02) {
    DriftSpec d;
    d.kind = kind;
    d.comp1 = [a1](Vec2) { return Jet2::constant(a1); };
    d.comp2 = [a2](Vec2) { return Jet2::constant(a2); };
    d.norm_margin = margin;
    return d;
  }

  Vec2 components(Vec2 q) const { return {comp1(q).v, comp2(q).v}; }
  double norm(Vec2 q) const { return hypot2(components(q)); }
};

// atan2(comp2, comp1); zero drift gives 0 by convention.
double drift_angle(const DriftSpec& drift, Vec2 q);

struct RotatedFrame {
  double theta0 = 0.0;  // drift angle at q
  Vec2 e1X, e2X;        // chart components, e1X aligned with the drift
};
RotatedFrame rotated_frame(const Metric& metric, const DriftSpec& drift, Vec2 q);

// Magnetic function: d Upsilon = -Omega dV_g, i.e.
// Omega = -(L_{e1} U2 - L_{e2} U1 - c1 U1 - c2 U2).
double omega(const Metric& metric, const DriftSpec& drift_form, Vec2 q);
Jet1 omega_jet(const Metric& metric, const DriftSpec& drift_form, Vec2 q);

// phi(theta, q) = 1 + U1 cos(theta) + U2 sin(theta); > 0 when |U|_g < 1.
double phi(const Metric& metric, const DriftSpec& drift_form, double theta, Vec2 q);

struct DriftViolation {
  Vec2 worst;
  double norm;
};

// Samples |drift|_g on an n x n grid; throws ValidationError carrying the
// worst point unless the max stays below 1 - norm_margin.
void validate_drift(const Metric& metric, const DriftSpec& drift, int n = 256);

// Navigation problems. Construction validates the drift kind; the drift
// norm bound is checked separately by validate_drift.
struct CoZermeloProblem {
  std::shared_ptr<const Metric> metric;
  DriftSpec drift;

  CoZermeloProblem(std::shared_ptr<const Metric> m, DriftSpec d)
      : metric(std::move(m)), drift(std::move(d)) {
    if (drift.kind != DriftKind::OneForm)
      throw ValidationError("co-Zermelo problem needs a one-form drift");
  }
  static CoZermeloProblem riemannian(std::shared_ptr<const Metric> m) {
    return CoZermeloProblem(std::move(m), DriftSpec::zero(DriftKind::OneForm));
  }
};

struct ZermeloProblem {
  std::shared_ptr<const Metric> metric;
  DriftSpec drift;

  ZermeloProblem(std::shared_ptr<const Metric> m, DriftSpec d)
      : metric(std::move(m)), drift(std::move(d)) {
    if (drift.kind != DriftKind::VectorField)
      throw ValidationError("Zermelo problem needs a vector-field drift");
  }
};

}  // namespace znav

#endif
