// Two-dimensional Riemannian surfaces given by an orthonormal frame on a
// single chart.
//
// Metric is the frame-based interface: everything (pairings, structural
// constants, Gaussian curvature, area density) is derived from the chart
// components of an orthonormal frame (e1, e2), supplied as second-order jets.
//
// ConformalSurface realizes metrics e^{2f}(dx^2 + dy^2) with the canonical
// frame e_i = e^{-f} d/dx_i. It stores E = e^{-f} as the primary field:
// the frame, structural constants (-E_y, E_x) and the Gaussian curvature
// E*(E_xx + E_yy) - |grad E|^2 are polynomial in the jet of E, so they stay
// finite and accurate even where the metric degenerates (hyperbolic disk
// boundary, stereographic infinity).
//
// FrameMetric holds an arbitrary frame field; it backs the metrics produced
// by the duality construction, which are not conformal in the source chart.

#ifndef ZNAV_GEOMETRY_HPP
#define ZNAV_GEOMETRY_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "znav/errors.hpp"
#include "znav/expr.hpp"
#include "znav/jet.hpp"

namespace znav {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

struct Vec2 {
  double x = 0.0, y = 0.0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double hypot2(Vec2 a) { return std::hypot(a.x, a.y); }

// Chart components of a covector (p dx + q dy).
struct Cov2 {
  double p1 = 0.0, p2 = 0.0;
};
inline Cov2 operator+(Cov2 a, Cov2 b) { return {a.p1 + b.p1, a.p2 + b.p2}; }
inline Cov2 operator-(Cov2 a, Cov2 b) { return {a.p1 - b.p1, a.p2 - b.p2}; }
inline Cov2 operator*(double s, Cov2 a) { return {s * a.p1, s * a.p2}; }
// Duality pairing <xi, v>.
inline double pair(Cov2 xi, Vec2 v) { return xi.p1 * v.x + xi.p2 * v.y; }

struct Chart {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool periodic_x = false;
  bool periodic_y = false;
  int euler_characteristic = 0;
  bool pole_compactification = false;

  void validate() const {
    if (!(x1 > x0) || !(y1 > y0)) throw ValidationError("chart domain is degenerate");
  }

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }

  // Wraps periodic coordinates into the fundamental domain.
  Vec2 wrap(Vec2 q) const {
    if (periodic_x) {
      q.x = std::fmod(q.x - x0, width());
      if (q.x < 0) q.x += width();
      q.x += x0;
    }
    if (periodic_y) {
      q.y = std::fmod(q.y - y0, height());
      if (q.y < 0) q.y += height();
      q.y += y0;
    }
    return q;
  }

  bool contains(Vec2 q) const {
    q = wrap(q);
    const bool in_x = periodic_x || (q.x > x0 && q.x < x1);
    const bool in_y = periodic_y || (q.y > y0 && q.y < y1);
    return in_x && in_y;
  }
};

struct FrameValues {
  Vec2 e1, e2;  // chart components of the orthonormal frame
};

struct FrameJets {
  Jet2 e1x, e1y, e2x, e2y;
  FrameValues values() const { return {{e1x.v, e1y.v}, {e2x.v, e2y.v}}; }
};

struct StructuralConstants {
  Jet1 c1, c2;  // [e1, e2] = c1 e1 + c2 e2, with first partials
};

using ScalarField = std::function<Jet2(Vec2)>;

class Metric {
 public:
  explicit Metric(Chart chart) : chart_(chart) { chart_.validate(); }
  virtual ~Metric() = default;

  const Chart& chart() const { return chart_; }

  virtual FrameJets frame_jets(Vec2 q) const = 0;
  virtual FrameValues frame_at(Vec2 q) const { return frame_jets(q).values(); }

  // Structural constants of the frame, with their first partials.
  virtual StructuralConstants structural_constants(Vec2 q) const;

  // Gaussian curvature -c1^2 - c2^2 + L_{e1} c2 - L_{e2} c1.
  virtual double gaussian_curvature(Vec2 q) const;

  // Chart density of the Riemannian area form dV = e1* ^ e2*.
  virtual double area_density(Vec2 q) const {
    const FrameValues fr = frame_at(q);
    return 1.0 / (fr.e1.x * fr.e2.y - fr.e1.y * fr.e2.x);
  }

  // Coframe chart components (rows of the inverse frame matrix).
  std::pair<Cov2, Cov2> coframe_at(Vec2 q) const;

  // g-orthonormal components of vectors and covectors.
  Vec2 vector_frame_components(Vec2 q, Vec2 v) const;
  Vec2 covector_frame_components(Vec2 q, Cov2 xi) const {
    const FrameValues fr = frame_at(q);
    return {pair(xi, fr.e1), pair(xi, fr.e2)};
  }
  Vec2 vector_from_frame_components(Vec2 q, double a1, double a2) const {
    const FrameValues fr = frame_at(q);
    return a1 * fr.e1 + a2 * fr.e2;
  }
  Cov2 covector_from_frame_components(Vec2 q, double a1, double a2) const {
    const auto [f1, f2] = coframe_at(q);
    return a1 * f1 + a2 * f2;
  }

  double pair_vectors(Vec2 q, Vec2 a, Vec2 b) const {
    const Vec2 ca = vector_frame_components(q, a);
    const Vec2 cb = vector_frame_components(q, b);
    return dot(ca, cb);
  }
  double pair_covectors(Vec2 q, Cov2 a, Cov2 b) const {
    return dot(covector_frame_components(q, a), covector_frame_components(q, b));
  }
  double norm_vector(Vec2 q, Vec2 v) const { return hypot2(vector_frame_components(q, v)); }
  double norm_covector(Vec2 q, Cov2 xi) const { return hypot2(covector_frame_components(q, xi)); }

  // Index lowering/raising: sharp(flat(v)) == v.
  Cov2 flat(Vec2 q, Vec2 v) const {
    const Vec2 c = vector_frame_components(q, v);
    return covector_from_frame_components(q, c.x, c.y);
  }
  Vec2 sharp(Vec2 q, Cov2 xi) const {
    const Vec2 c = covector_frame_components(q, xi);
    return vector_from_frame_components(q, c.x, c.y);
  }

  // Throws DomainError unless q (after periodic wrap) lies in the open domain.
  Vec2 require_inside(Vec2 q) const;

 private:
  Chart chart_;
};

class ConformalSurface final : public Metric {
 public:
  // Builds from the conformal factor f; E = exp(-f) is derived.
  static std::shared_ptr<ConformalSurface> from_f(Chart chart, ScalarField f);
  // Builds from a closed form for E = e^{-f}; f is derived as -log E.
  static std::shared_ptr<ConformalSurface> from_emf(Chart chart, ScalarField emf);
  static std::shared_ptr<ConformalSurface> from_expression(Chart chart, const Expression& f);

  // Built-in surfaces.
  static std::shared_ptr<ConformalSurface> flat_torus();      // [0,2pi]^2, f = 0
  static std::shared_ptr<ConformalSurface> sphere();          // stereographic, f = log(2/(1+r^2))
  static std::shared_ptr<ConformalSurface> hyperbolic_disk(); // f = log(2/(1-r^2))
  // Constant-curvature sphere chart with kappa = k > 0 (E = 1 + k r^2 / 4).
  static std::shared_ptr<ConformalSurface> round_sphere(double k);

  Jet2 f_jet(Vec2 q) const { return f_(q); }
  Jet2 emf_jet(Vec2 q) const { return emf_(q); }
  double conformal_factor(Vec2 q) const { return f_(q).v; }

  FrameJets frame_jets(Vec2 q) const override;
  FrameValues frame_at(Vec2 q) const override {
    const double e = emf_(q).v;
    return {{e, 0.0}, {0.0, e}};
  }
  StructuralConstants structural_constants(Vec2 q) const override {
    const Jet2 e = emf_(q);
    return {-e.dy(), e.dx()};
  }
  double gaussian_curvature(Vec2 q) const override {
    const Jet2 e = emf_(q);
    return e.v * (e.gxx + e.gyy) - (e.gx * e.gx + e.gy * e.gy);
  }
  // Independent route -e^{-2f} (f_xx + f_yy), used as a cross-check.
  double gaussian_curvature_laplacian(Vec2 q) const {
    const Jet2 f = f_(q);
    return -std::exp(-2.0 * f.v) * (f.gxx + f.gyy);
  }
  double area_density(Vec2 q) const override {
    const double e = emf_(q).v;
    return 1.0 / (e * e);
  }

 private:
  ConformalSurface(Chart chart, ScalarField f, ScalarField emf)
      : Metric(chart), f_(std::move(f)), emf_(std::move(emf)) {}

  ScalarField f_;
  ScalarField emf_;
};

class FrameMetric final : public Metric {
 public:
  FrameMetric(Chart chart, std::function<FrameJets(Vec2)> frame)
      : Metric(chart), frame_(std::move(frame)) {}

  FrameJets frame_jets(Vec2 q) const override { return frame_(q); }

 private:
  std::function<FrameJets(Vec2)> frame_;
};

// Default chart used by built-in non-compact stereographic-type surfaces.
Chart sphere_chart();
Chart torus_chart();
Chart disk_chart();

}  // namespace znav

#endif
