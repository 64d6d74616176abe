#include "znav/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace znav {

namespace {

constexpr double kConjugateTmin = 1e-6;

// State layout: (x, y, theta, beta, beta', gamma, gamma').
OdeRhs hill_rhs(const CoZermeloProblem& pb) {
  return [&pb](double, const double* y, double* dy) {
    const CoZermeloVelocity v = cozermelo_field(pb, {{y[0], y[1]}, y[2]});
    const double kappa = fiber_point_data(pb, {y[0], y[1]}).kappa_cozermelo(y[2]);
    dy[0] = v.qdot.x;
    dy[1] = v.qdot.y;
    dy[2] = v.thetadot;
    dy[3] = y[4];
    dy[4] = -kappa * y[3];
    dy[5] = y[6];
    dy[6] = -kappa * y[5];
  };
}

}  // namespace

JacobiArc jacobi_solve(const CoZermeloProblem& pb, const FiberPoint& start, double T,
                       const SolverConfig& cfg, const std::vector<double>& sample_times) {
  const Vec2 q0 = pb.metric->require_inside(start.q);
  const OdeRhs rhs = hill_rhs(pb);

  JacobiArc arc;
  const Chart& chart = pb.metric->chart();
  const auto emit = [&](double t, const double* y) {
    FiberPoint s{chart.wrap({y[0], y[1]}), wrap_angle(y[2])};
    const double res = std::fabs(h_cozermelo(pb, covector_of(pb, s)) - 1.0);
    arc.along.samples.push_back({t, s, res});
    arc.beta.push_back(y[3]);
    arc.beta_dot.push_back(y[4]);
    arc.gamma.push_back(y[5]);
    arc.gamma_dot.push_back(y[6]);
  };

  std::vector<double> y{q0.x, q0.y, start.theta, 1.0, 0.0, 0.0, 1.0};
  emit(0.0, y.data());

  std::vector<double> wanted(sample_times);
  std::sort(wanted.begin(), wanted.end());
  size_t next_sample = 0;
  double last_emitted = 0.0;

  const StepCallback on_step = [&](const StepInterpolant& interp, const double* ynew) {
    if (!wanted.empty()) {
      double buf[7] = {};
      while (next_sample < wanted.size() && wanted[next_sample] <= interp.t1() + 1e-14) {
        const double ts = std::min(wanted[next_sample], interp.t1());
        if (ts > interp.t0() && ts > last_emitted) {
          interp.state(ts, buf);
          emit(ts, buf);
          last_emitted = ts;
        }
        ++next_sample;
      }
    } else {
      emit(interp.t1(), ynew);
    }
    return StepControl::Continue;
  };

  OdeOptions opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.max_steps = cfg.max_steps;
  const OdeStats st = integrate_ode(rhs, 0.0, T, y, opts, on_step);
  arc.along.stats = {st.n_steps, st.n_accepted, st.n_rejected, st.n_rhs};
  if (!wanted.empty() && (arc.along.samples.empty() || arc.along.samples.back().t < T)) {
    emit(T, y.data());
  }

  for (size_t i = 0; i < arc.beta.size(); ++i) {
    const double bg = arc.beta[i] * arc.gamma_dot[i];
    const double gb = arc.beta_dot[i] * arc.gamma[i];
    const double scale = std::max(1.0, std::fabs(bg) + std::fabs(gb));
    arc.wronskian_drift = std::max(arc.wronskian_drift, std::fabs(bg - gb - 1.0) / scale);
    arc.along.hamiltonian_drift =
        std::max(arc.along.hamiltonian_drift, arc.along.samples[i].h_residual);
  }
  return arc;
}

ConjugateReport first_conjugate_time(const CoZermeloProblem& pb, const FiberPoint& start,
                                     double T_max, const SolverConfig& cfg) {
  ConjugateReport report;
  report.t_max = T_max;

  // Integrate once, watching gamma for a sign change; the bisection runs on
  // the dense output of the bracketing step, inside the step callback.
  const Vec2 q0 = pb.metric->require_inside(start.q);
  const OdeRhs rhs = hill_rhs(pb);
  double g_prev = 0.0, t_prev = 0.0;
  const StepCallback on_step = [&](const StepInterpolant& interp, const double* ynew) {
    const double g_new = ynew[5];
    double lo = std::max(t_prev, kConjugateTmin);
    if (interp.t1() > kConjugateTmin) {
      double g_lo = (lo > t_prev) ? interp.component(lo, 5) : g_prev;
      if (g_lo * g_new <= 0.0 && (g_lo != 0.0 || g_new != 0.0)) {
        double hi = interp.t1();
        double g_hi = g_new;
        while (hi - lo > 1e-10) {
          const double mid = 0.5 * (lo + hi);
          const double g_mid = interp.component(mid, 5);
          if (g_lo * g_mid <= 0.0) {
            hi = mid;
            g_hi = g_mid;
          } else {
            lo = mid;
            g_lo = g_mid;
          }
        }
        report.first_conjugate_time = 0.5 * (lo + hi);
        report.bracket_lo = lo;
        report.bracket_hi = hi;
        report.gamma_lo = g_lo;
        report.gamma_hi = g_hi;
        return StepControl::Stop;
      }
    }
    g_prev = g_new;
    t_prev = interp.t1();
    return StepControl::Continue;
  };

  OdeOptions opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.max_steps = cfg.max_steps;
  std::vector<double> y{q0.x, q0.y, start.theta, 1.0, 0.0, 0.0, 1.0};
  integrate_ode(rhs, 0.0, T_max, y, opts, on_step);
  return report;
}

RiccatiEstimate riccati_yplus(const CoZermeloProblem& pb, const FiberPoint& start, double T,
                              double convergence_tol, const SolverConfig& cfg) {
  const ConjugateReport conj = first_conjugate_time(pb, start, T, cfg);
  if (conj.first_conjugate_time) {
    std::ostringstream os;
    os << "riccati_yplus: conjugate point at t = " << *conj.first_conjugate_time
       << " inside (0, " << T << "]";
    throw ValidationError(os.str());
  }

  const std::vector<double> checkpoints{T / 2.0, 3.0 * T / 4.0, T};
  const JacobiArc arc = jacobi_solve(pb, start, T, cfg, checkpoints);

  RiccatiEstimate est;
  int found = 0;
  for (size_t i = 0; i < arc.along.samples.size() && found < 3; ++i) {
    if (std::fabs(arc.along.samples[i].t - checkpoints[found]) < 1e-9) {
      est.checkpoints[found] = arc.along.samples[i].t;
      est.y_values[found] = arc.y(i);
      ++found;
    }
  }
  if (found != 3) throw NumericalError("riccati_yplus: checkpoint sampling failed");

  est.estimate = est.y_values[2];
  est.tail_variation = std::fabs(est.y_values[2] - est.y_values[1]);
  est.converged = est.tail_variation < convergence_tol;
  // Strict decrease up to solver noise.
  const double slack = 1e-8;
  est.monotone = (est.y_values[0] > est.y_values[1] - slack) &&
                 (est.y_values[1] > est.y_values[2] - slack);
  return est;
}

}  // namespace znav
