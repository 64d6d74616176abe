// Quadrature over the surface M, the unit cosphere bundle and the level
// surface H, plus the Gauss-Bonnet style reports.
//
// Torus charts use the periodic trapezoid rule in every direction
// (spectral accuracy on smooth periodic data). Stereographic sphere charts
// substitute r = tan(s/2), turning the improper plane integral into a
// proper one over s in [0, pi], handled by Gauss-Legendre; fiber and
// azimuth directions stay periodic-trapezoid.
//
// Liouville pullback: int_H F dL = int_M int_0^{2pi} F(theta, q) phi dtheta dV.
//
// Every kernel runs either serially or as an OpenMP reduction; both paths
// share the same per-cell terms, and tests pin them against each other.

#ifndef ZNAV_INTEGRALS_HPP
#define ZNAV_INTEGRALS_HPP

#include <functional>

#include "znav/curvature.hpp"
#include "znav/drift.hpp"

namespace znav {

enum class Exec { Serial, Parallel };

enum class QuadScheme { PeriodicTrapezoid, GaussLegendre };

struct QuadratureGrid {
  int nx = 96, ny = 96, ntheta = 96;
  QuadScheme scheme = QuadScheme::PeriodicTrapezoid;
  bool compactified = false;

  void validate() const {
    if (nx < 16 || ny < 16 || ntheta < 16)
      throw ValidationError("quadrature resolutions must be >= 16");
  }
  // Scheme/compactification chosen from the chart topology.
  static QuadratureGrid for_chart(const Chart& chart, int nx = 96, int ny = 96, int ntheta = 96);
};

double integrate_over_M(const Metric& metric, const std::function<double(Vec2)>& f,
                        const QuadratureGrid& grid, Exec exec = Exec::Parallel);

// Unit-cosphere integral with the Riemannian volume dR = dtheta dV.
double integrate_over_cosphere(const Metric& metric,
                               const std::function<double(const FiberPoint&)>& f,
                               const QuadratureGrid& grid, Exec exec = Exec::Parallel);

// Liouville integral over H (phi-weighted pullback).
double integrate_over_H(const CoZermeloProblem& pb,
                        const std::function<double(const FiberPoint&)>& f,
                        const QuadratureGrid& grid, Exec exec = Exec::Parallel);

struct GaussBonnetReport {
  double lhs_cozermelo = 0.0;   // (1/4pi^2) int_H phi kappa_coZ dL
  double lhs_magnetic = 0.0;    // (1/4pi^2) int kappa_mag dR
  int chi = 0;
  double omega_term = 0.0;      // (1/2pi) int_M Omega^2 dV
  double schwarzian_term = 0.0; // (1/4pi^2) int_H (L_h phi / 2)^2 dL / phi
  double identity_residual = 0.0;       // |lhs_magnetic - chi - omega_term|
  double decomposition_residual = 0.0;  // |lhs_cozermelo - chi - omega - schwarzian|
  bool inequality_holds = false;
  double tol = 1e-4;
};

GaussBonnetReport gauss_bonnet_report(const CoZermeloProblem& pb, const QuadratureGrid& grid,
                                      Exec exec = Exec::Parallel, double tol = 1e-4);

// int_H kappa_coZ dL.
double total_curvature(const CoZermeloProblem& pb, const QuadratureGrid& grid,
                       Exec exec = Exec::Parallel);

// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Base-point nodes of the quadrature grid (row-major over nx x ny); used by
// the CLI for curvature grids and dual-metric coefficient dumps.
std::vector<Vec2> quadrature_nodes(const Metric& metric, const QuadratureGrid& grid);

}  // namespace znav

#endif
