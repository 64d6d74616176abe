#include "znav/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace znav {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

double initial_step_guess(const OdeRhs& rhs, double t0, const std::vector<double>& y,
                          const std::vector<double>& f0, double t1, const OdeOptions& opts,
                          OdeStats& stats) {
  const int n = static_cast<int>(y.size());
  double dnf = 0.0, dny = 0.0;
  for (int i = 0; i < n; ++i) {
    const double sk = opts.abs_tol + opts.rel_tol * std::fabs(y[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y[i] / sk) * (y[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  h = std::min(h, t1 - t0);

  // One explicit Euler step to estimate the second derivative.
  std::vector<double> y1(n), f1(n);
  for (int i = 0; i < n; ++i) y1[i] = y[i] + h * f0[i];
  rhs(t0 + h, y1.data(), f1.data());
  ++stats.n_rhs;
  double der2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double sk = opts.abs_tol + opts.rel_tol * std::fabs(y[i]);
    const double d = (f1[i] - f0[i]) / sk;
    der2 += d * d;
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(der2, std::sqrt(dnf));
  const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min({100.0 * h, h1, t1 - t0});
}

}  // namespace

OdeStats integrate_ode(const OdeRhs& rhs, double t0, double t1, std::vector<double>& y,
                       const OdeOptions& opts, const StepCallback& on_step) {
  if (!(t1 > t0)) throw ValidationError("integrate_ode needs t1 > t0");
  const int n = static_cast<int>(y.size());
  OdeStats stats;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  std::vector<double> ytmp(n), ynew(n), cont(5 * static_cast<size_t>(n));

  rhs(t0, y.data(), k1.data());
  ++stats.n_rhs;

  double t = t0;
  double h = opts.initial_step > 0.0 ? std::min(opts.initial_step, t1 - t0)
                                     : initial_step_guess(rhs, t0, y, k1, t1, opts, stats);
  const double hmin_floor = 1e4 * std::numeric_limits<double>::epsilon();
  bool rejected_last = false;

  while (t < t1) {
    if (stats.n_steps++ > opts.max_steps)
      throw NumericalError("ODE step budget exhausted at t = " + std::to_string(t));
    if (h < hmin_floor * std::max(1.0, std::fabs(t)))
      throw NumericalError("ODE step size underflow at t = " + std::to_string(t));
    if (t + h > t1) h = t1 - t;

    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + h / 5.0, ytmp.data(), k2.data());
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + 3.0 * h / 10.0, ytmp.data(), k3.data());
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + 4.0 * h / 5.0, ytmp.data(), k4.data());
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + 8.0 * h / 9.0, ytmp.data(), k5.data());
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp.data(), k6.data());
    for (int i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, ynew.data(), k7.data());  // FSAL stage
    stats.n_rhs += 6;

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sk =
          opts.abs_tol + opts.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {
      // Accept; build dense output.
      for (int i = 0; i < n; ++i) {
        const double ydiff = ynew[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        cont[i] = y[i];
        cont[n + i] = ydiff;
        cont[2 * n + i] = bspl;
        cont[3 * n + i] = -h * k7[i] + ydiff - bspl;
        cont[4 * n + i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                               d7 * k7[i]);
      }
      const StepInterpolant interp(t, h, &cont, n);
      ++stats.n_accepted;
      t += h;
      std::swap(y, ynew);
      std::swap(k1, k7);
      if (on_step && on_step(interp, y.data()) == StepControl::Stop) return stats;

      double fac = 0.9 * std::pow(err > 1e-30 ? err : 1e-30, -0.2);
      fac = std::min(rejected_last ? 1.0 : 10.0, std::max(0.2, fac));
      h *= fac;
      rejected_last = false;
    } else {
      ++stats.n_rejected;
      const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
      h *= std::min(1.0, fac);
      rejected_last = true;
    }
  }
  return stats;
}

}  // namespace znav
