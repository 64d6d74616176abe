#include "znav/integrals.hpp"

#include <cmath>
#include <vector>

namespace znav {

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    nodes[i] = xm - xl * z;
    nodes[n - 1 - i] = xm + xl * z;
    weights[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

QuadratureGrid QuadratureGrid::for_chart(const Chart& chart, int nx, int ny, int ntheta) {
  QuadratureGrid g;
  g.nx = nx;
  g.ny = ny;
  g.ntheta = ntheta;
  g.compactified = chart.pole_compactification;
  g.scheme = g.compactified ? QuadScheme::GaussLegendre : QuadScheme::PeriodicTrapezoid;
  g.validate();
  return g;
}

namespace {

struct BaseQuadrature {
  // Base-point nodes q_{i,j} with combined weights; on compactified charts
  // the weight already includes the substitution Jacobian but not the
  // metric density (applied per metric later).
  std::vector<double> xs, ys;     // node coordinates (sizes nx, ny)
  std::vector<double> wx, wy;     // 1D weights
  bool compactified = false;
  int nx = 0, ny = 0;

  Vec2 node(int i, int j) const {
    if (!compactified) return {xs[i], ys[j]};
    const double r = std::tan(0.5 * xs[i]);
    return {r * std::cos(ys[j]), r * std::sin(ys[j])};
  }
  // Chart-measure weight dx dy (or the substituted r dr dalpha measure).
  double weight(int i, int j) const {
    if (!compactified) return wx[i] * wy[j];
    const double s = xs[i];
    const double r = std::tan(0.5 * s);
    const double drds = 0.5 * (1.0 + r * r);
    return wx[i] * wy[j] * r * drds;
  }
};

BaseQuadrature make_base(const Metric& metric, const QuadratureGrid& grid) {
  grid.validate();
  const Chart& chart = metric.chart();
  BaseQuadrature b;
  b.nx = grid.nx;
  b.ny = grid.ny;
  b.compactified = chart.pole_compactification;
  if (b.compactified) {
    if (grid.scheme != QuadScheme::GaussLegendre)
      throw ValidationError("compactified charts integrate with the Gauss-Legendre scheme");
    // s in (0, pi) Gauss-Legendre; azimuth periodic trapezoid.
    gauss_legendre(grid.nx, 0.0, kPi, b.xs, b.wx);
    b.ys.resize(grid.ny);
    b.wy.assign(grid.ny, kTwoPi / grid.ny);
    for (int j = 0; j < grid.ny; ++j) b.ys[j] = j * kTwoPi / grid.ny;
    return b;
  }
  if (!(chart.periodic_x && chart.periodic_y))
    throw ValidationError(
        "integration needs a compact surface: a fully periodic chart or a "
        "pole-compactified one");
  if (grid.scheme != QuadScheme::PeriodicTrapezoid)
    throw ValidationError("periodic charts integrate with the periodic trapezoid scheme");
  b.xs.resize(grid.nx);
  b.wx.assign(grid.nx, chart.width() / grid.nx);
  for (int i = 0; i < grid.nx; ++i) b.xs[i] = chart.x0 + i * chart.width() / grid.nx;
  b.ys.resize(grid.ny);
  b.wy.assign(grid.ny, chart.height() / grid.ny);
  for (int j = 0; j < grid.ny; ++j) b.ys[j] = chart.y0 + j * chart.height() / grid.ny;
  return b;
}

template <class PerCell>
double reduce_cells(long n, const PerCell& term, Exec exec) {
  double total = 0.0;
  if (exec == Exec::Parallel) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (long k = 0; k < n; ++k) total += term(k);
  } else {
    for (long k = 0; k < n; ++k) total += term(k);
  }
  return total;
}

}  // namespace

double integrate_over_M(const Metric& metric, const std::function<double(Vec2)>& f,
                        const QuadratureGrid& grid, Exec exec) {
  const BaseQuadrature b = make_base(metric, grid);
  const long n = static_cast<long>(b.nx) * b.ny;
  return reduce_cells(
      n,
      [&](long k) {
        const int i = static_cast<int>(k / b.ny);
        const int j = static_cast<int>(k % b.ny);
        const Vec2 q = b.node(i, j);
        return f(q) * metric.area_density(q) * b.weight(i, j);
      },
      exec);
}

double integrate_over_cosphere(const Metric& metric,
                               const std::function<double(const FiberPoint&)>& f,
                               const QuadratureGrid& grid, Exec exec) {
  const BaseQuadrature b = make_base(metric, grid);
  const long n = static_cast<long>(b.nx) * b.ny;
  const double wtheta = kTwoPi / grid.ntheta;
  const int ntheta = grid.ntheta;
  return reduce_cells(
      n,
      [&](long k) {
        const int i = static_cast<int>(k / b.ny);
        const int j = static_cast<int>(k % b.ny);
        const Vec2 q = b.node(i, j);
        const double base_w = metric.area_density(q) * b.weight(i, j);
        double acc = 0.0;
        for (int m = 0; m < ntheta; ++m) acc += f({q, m * wtheta});
        return acc * wtheta * base_w;
      },
      exec);
}

double integrate_over_H(const CoZermeloProblem& pb,
                        const std::function<double(const FiberPoint&)>& f,
                        const QuadratureGrid& grid, Exec exec) {
  const Metric& metric = *pb.metric;
  const BaseQuadrature b = make_base(metric, grid);
  const long n = static_cast<long>(b.nx) * b.ny;
  const double wtheta = kTwoPi / grid.ntheta;
  const int ntheta = grid.ntheta;
  return reduce_cells(
      n,
      [&](long k) {
        const int i = static_cast<int>(k / b.ny);
        const int j = static_cast<int>(k % b.ny);
        const Vec2 q = b.node(i, j);
        const double base_w = metric.area_density(q) * b.weight(i, j);
        const Vec2 u = pb.drift.components(q);
        double acc = 0.0;
        for (int m = 0; m < ntheta; ++m) {
          const double theta = m * wtheta;
          const double ph = 1.0 + u.x * std::cos(theta) + u.y * std::sin(theta);
          acc += f({q, theta}) * ph;
        }
        return acc * wtheta * base_w;
      },
      exec);
}

namespace {

// One pass over the (q, theta) grid accumulating every Gauss-Bonnet
// ingredient; fiber data is computed once per base point.
struct GbSums {
  double mag = 0.0;         // int kappa_mag dR
  double coz_phi2 = 0.0;    // int kappa_coZ phi^2 dtheta dV  (= int_H phi k dL)
  double coz_phi = 0.0;     // int kappa_coZ phi dtheta dV    (= int_H k dL)
  double omega2 = 0.0;      // int Omega^2 dV
  double schwarz = 0.0;     // int (L_h phi / 2)^2 dtheta dV
};

GbSums gauss_bonnet_sums(const CoZermeloProblem& pb, const QuadratureGrid& grid, Exec exec) {
  const Metric& metric = *pb.metric;
  const BaseQuadrature b = make_base(metric, grid);
  const long n = static_cast<long>(b.nx) * b.ny;
  const double wtheta = kTwoPi / grid.ntheta;
  const int ntheta = grid.ntheta;

  // Per-cell contribution to all five sums; fiber data once per base point.
  const auto cell = [&](long k, double out[5]) {
    const int i = static_cast<int>(k / b.ny);
    const int j = static_cast<int>(k % b.ny);
    const Vec2 q = b.node(i, j);
    const double base_w = metric.area_density(q) * b.weight(i, j);
    const FiberPointData d = fiber_point_data(pb, q);
    double mag = 0.0, coz2 = 0.0, coz1 = 0.0, schw = 0.0;
    for (int m = 0; m < ntheta; ++m) {
      const double theta = m * wtheta;
      const double ph = d.phi(theta);
      const double kcoz = d.kappa_cozermelo(theta);
      mag += d.kappa_mag(theta);
      coz2 += kcoz * ph * ph;
      coz1 += kcoz * ph;
      const double half = 0.5 * d.flow_dphi(theta);
      schw += half * half;
    }
    out[0] = mag * wtheta * base_w;
    out[1] = coz2 * wtheta * base_w;
    out[2] = coz1 * wtheta * base_w;
    out[3] = d.om.v * d.om.v * base_w;
    out[4] = schw * wtheta * base_w;
  };

  double mag = 0.0, coz2 = 0.0, coz1 = 0.0, om2 = 0.0, schw = 0.0;
  if (exec == Exec::Parallel) {
#pragma omp parallel for reduction(+ : mag, coz2, coz1, om2, schw) schedule(static)
    for (long k = 0; k < n; ++k) {
      double out[5];
      cell(k, out);
      mag += out[0];
      coz2 += out[1];
      coz1 += out[2];
      om2 += out[3];
      schw += out[4];
    }
  } else {
    for (long k = 0; k < n; ++k) {
      double out[5];
      cell(k, out);
      mag += out[0];
      coz2 += out[1];
      coz1 += out[2];
      om2 += out[3];
      schw += out[4];
    }
  }
  return GbSums{mag, coz2, coz1, om2, schw};
}

}  // namespace

GaussBonnetReport gauss_bonnet_report(const CoZermeloProblem& pb, const QuadratureGrid& grid,
                                      Exec exec, double tol) {
  const GbSums s = gauss_bonnet_sums(pb, grid, exec);
  const double four_pi2 = 4.0 * kPi * kPi;
  GaussBonnetReport r;
  r.chi = pb.metric->chart().euler_characteristic;
  r.lhs_magnetic = s.mag / four_pi2;
  r.lhs_cozermelo = s.coz_phi2 / four_pi2;
  r.omega_term = s.omega2 / kTwoPi;
  r.schwarzian_term = s.schwarz / four_pi2;
  r.identity_residual = std::fabs(r.lhs_magnetic - r.chi - r.omega_term);
  r.decomposition_residual =
      std::fabs(r.lhs_cozermelo - r.chi - r.omega_term - r.schwarzian_term);
  r.tol = tol;
  r.inequality_holds = (r.lhs_cozermelo >= r.chi - tol) && (r.lhs_magnetic >= r.chi - tol);
  return r;
}

double total_curvature(const CoZermeloProblem& pb, const QuadratureGrid& grid, Exec exec) {
  const GbSums s = gauss_bonnet_sums(pb, grid, exec);
  return s.coz_phi;
}

std::vector<Vec2> quadrature_nodes(const Metric& metric, const QuadratureGrid& grid) {
  const BaseQuadrature b = make_base(metric, grid);
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(b.nx) * b.ny);
  for (int i = 0; i < b.nx; ++i)
    for (int j = 0; j < b.ny; ++j) out.push_back(b.node(i, j));
  return out;
}

}  // namespace znav
