// Control curvature of Zermelo-like problems on the level surface H.
//
// kappa_mag  = kappa_g + Omega^2 + sin(t) L_{e1}Omega - cos(t) L_{e2}Omega
// S(phi)     = phi L_h(L_h phi / 2) - (L_h phi / 2)^2   (L_h along the flow)
// kappa_coZ  = (kappa_mag - S(phi)) / phi^2
//
// The closed forms are assembled by exact chain rule from the jets of the
// drift components and the frame. An independent oracle evaluates the
// double commutator [h, [v, h]] = kappa v by nested central-difference Lie
// brackets of the raw field evaluators and projects onto v.

#ifndef ZNAV_CURVATURE_HPP
#define ZNAV_CURVATURE_HPP

#include <functional>

#include "znav/duality.hpp"
#include "znav/hamiltonian.hpp"

namespace znav {

// Per-base-point data; everything theta-dependent is cheap on top of it.
struct FiberPointData {
  Vec2 q;
  double kg = 0.0;   // Gaussian curvature at q
  Jet1 c1, c2;       // structural constants with gradients
  Jet1 om;           // Omega with gradient
  Jet2 u1, u2;       // drift frame components
  FrameJets fr;

  double phi(double theta) const;
  double kappa_mag(double theta) const;
  double lterm(double theta) const;       // sin t L_{e1}Om - cos t L_{e2}Om
  double flow_dphi(double theta) const;   // L_h phi
  double schwarzian(double theta) const;  // S(phi)
  double kappa_cozermelo(double theta) const;
};
FiberPointData fiber_point_data(const CoZermeloProblem& pb, Vec2 q);

double kappa_mag(const CoZermeloProblem& pb, const FiberPoint& s);
double schwarzian(const CoZermeloProblem& pb, const FiberPoint& s);
double kappa_cozermelo(const CoZermeloProblem& pb, const FiberPoint& s);

// Curvature of a Zermelo problem through its dual co-Zermelo problem; the
// fiber point uses the polar angle of the Zermelo parametrization.
double kappa_zermelo(const ZermeloProblem& pb, const DualCoZermelo& dual, const FiberPoint& s);
double kappa_zermelo(const ZermeloProblem& pb, const FiberPoint& s);

// ---- bracket oracle ----

struct Vec3 {
  double x = 0.0, y = 0.0, t = 0.0;
};
using Field3 = std::function<Vec3(const Vec3&)>;

struct OracleOptions {
  double step_inner = 2e-4;
  double step_outer = 2e-3;
};

struct OracleResult {
  double kappa = 0.0;
  double residual_h = 0.0;           // |h-component| / |kappa v|
  double residual_transverse = 0.0;  // |component off span(v,h)| / |kappa v|
};

// Nested central-difference double commutator [h, [v, h]] at `state`,
// decomposed in the basis (v, h, v x h).
OracleResult curvature_bracket_oracle(const Field3& field_h, const Field3& field_v, Vec3 state,
                                      const OracleOptions& opts = {});
Vec3 numeric_bracket(const Field3& a, const Field3& b, const Vec3& p, double step);

// Field evaluators on the (x, y, theta) chart of H.
Field3 cozermelo_field3(const CoZermeloProblem& pb);
Field3 cozermelo_vertical_field3(const CoZermeloProblem& pb);  // sqrt(phi) d/dtheta
Field3 riemannian_field3(std::shared_ptr<const Metric> metric);
// Canonical Zermelo flow pushed to the (x, y, polar-theta) chart.
Field3 zermelo_field3(const ZermeloProblem& pb);
// The canonical vertical field of the Zermelo problem, transported from its
// dual (v is feedback-invariant up to sign).
Field3 zermelo_vertical_field3(const ZermeloProblem& pb, const DualCoZermelo& dual);

// The derived magnetic L-term evaluated through a numeric commutator and a
// finite-difference directional derivative (self-test twin of lterm()).
double kappa_mag_lterm_numeric(const CoZermeloProblem& pb, const FiberPoint& s);

enum class CurvatureKind { Gaussian, Magnetic, CoZermelo, Oracle };

struct CurvatureField {
  CurvatureKind kind = CurvatureKind::CoZermelo;
  std::function<double(const FiberPoint&)> eval;
};
CurvatureField make_curvature_field(const CoZermeloProblem& pb, CurvatureKind kind);

}  // namespace znav

#endif
