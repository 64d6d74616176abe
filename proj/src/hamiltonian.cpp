#include "znav/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace znav {

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

CotangentPoint covector_of(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  const Vec2 u = pb.drift.components(q);
  const Cov2 p = pb.metric->covector_from_frame_components(q, u.x + std::cos(s.theta),
                                                           u.y + std::sin(s.theta));
  return {q, p};
}

FiberPoint fiber_of(const CoZermeloProblem& pb, const CotangentPoint& cp, double level_tol) {
  const Vec2 q = pb.metric->require_inside(cp.q);
  const Vec2 a = pb.metric->covector_frame_components(q, cp.p);
  const Vec2 u = pb.drift.components(q);
  const Vec2 rel{a.x - u.x, a.y - u.y};
  const double n = hypot2(rel);
  if (std::fabs(n - 1.0) > level_tol) {
    std::ostringstream os;
    os << "covector is off the level surface: |lambda - Upsilon|_g = " << n;
    throw ValidationError(os.str());
  }
  return {q, wrap_angle(std::atan2(rel.y, rel.x))};
}

CotangentPoint covector_of(const ZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  const Vec2 xc = pb.drift.components(q);
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  const double denom = 1.0 + xc.x * ct + xc.y * st;
  if (!(denom > 0.0)) throw ValidationError("Zermelo fiber parametrization needs |X|_g < 1");
  const double rho = 1.0 / denom;
  return {q, pb.metric->covector_from_frame_components(q, rho * ct, rho * st)};
}

FiberPoint fiber_of(const ZermeloProblem& pb, const CotangentPoint& cp, double level_tol) {
  const Vec2 q = pb.metric->require_inside(cp.q);
  const Vec2 a = pb.metric->covector_frame_components(q, cp.p);
  const double h = h_zermelo(pb, cp);
  if (std::fabs(h - 1.0) > level_tol) {
    throw ValidationError("covector is off the Zermelo level surface: h = " + std::to_string(h));
  }
  return {q, wrap_angle(std::atan2(a.y, a.x))};
}

double h_zermelo(const ZermeloProblem& pb, const CotangentPoint& cp) {
  const Vec2 q = pb.metric->require_inside(cp.q);
  const Vec2 a = pb.metric->covector_frame_components(q, cp.p);
  const Vec2 xc = pb.drift.components(q);
  return a.x * xc.x + a.y * xc.y + hypot2(a);
}

double h_cozermelo(const CoZermeloProblem& pb, const CotangentPoint& cp) {
  const Vec2 q = pb.metric->require_inside(cp.q);
  const Vec2 a = pb.metric->covector_frame_components(q, cp.p);
  const Vec2 u = pb.drift.components(q);
  const double u2 = dot(u, u);
  if (u2 >= 1.0) {
    std::ostringstream os;
    os << "drift norm " << std::sqrt(u2) << " >= 1 at (" << q.x << ", " << q.y << ")";
    throw ValidationError(os.str());
  }
  const double lu = dot(a, u);
  const double l2 = dot(a, a);
  const double w = 1.0 - u2;
  return (-lu + std::sqrt(lu * lu + w * l2)) / w;
}

CoZermeloVelocity cozermelo_field(const CoZermeloProblem& pb, const FiberPoint& s) {
  const Vec2 q = pb.metric->require_inside(s.q);
  const FrameValues fr = pb.metric->frame_at(q);
  const StructuralConstants sc = pb.metric->structural_constants(q);
  const double om = omega(*pb.metric, pb.drift, q);
  const double ct = std::cos(s.theta), st = std::sin(s.theta);
  const double ph = phi(*pb.metric, pb.drift, s.theta, q);
  if (!(ph > 0.0)) throw NumericalError("phi <= 0 along the flow (drift norm bound violated)");
  CoZermeloVelocity v;
  v.qdot = (1.0 / ph) * (ct * fr.e1 + st * fr.e2);
  v.thetadot = (sc.c1.v * ct + sc.c2.v * st + om) / ph;
  return v;
}

CanonicalVelocity zermelo_field_canonical(const ZermeloProblem& pb, const CotangentPoint& cp) {
  if (cp.p.p1 == 0.0 && cp.p.p2 == 0.0)
    throw NumericalError("canonical Zermelo field is singular at p = 0");
  const auto h = [&pb](Vec2 q, Cov2 p) { return h_zermelo(pb, {q, p}); };
  const double sq1 = 1e-6 * std::max(1.0, std::fabs(cp.q.x));
  const double sq2 = 1e-6 * std::max(1.0, std::fabs(cp.q.y));
  const double sp1 = 1e-6 * std::max(1.0, std::fabs(cp.p.p1));
  const double sp2 = 1e-6 * std::max(1.0, std::fabs(cp.p.p2));
  CanonicalVelocity v;
  v.qdot.x = (h(cp.q, {cp.p.p1 + sp1, cp.p.p2}) - h(cp.q, {cp.p.p1 - sp1, cp.p.p2})) / (2 * sp1);
  v.qdot.y = (h(cp.q, {cp.p.p1, cp.p.p2 + sp2}) - h(cp.q, {cp.p.p1, cp.p.p2 - sp2})) / (2 * sp2);
  v.pdot.p1 =
      -(h({cp.q.x + sq1, cp.q.y}, cp.p) - h({cp.q.x - sq1, cp.q.y}, cp.p)) / (2 * sq1);
  v.pdot.p2 =
      -(h({cp.q.x, cp.q.y + sq2}, cp.p) - h({cp.q.x, cp.q.y - sq2}, cp.p)) / (2 * sq2);
  return v;
}

namespace {

struct GuardState {
  Termination termination = Termination::Completed;
  double t_last = 0.0;
  Vec2 q_last;
};

// Distance to the missing pole of a stereographic chart, in surface angle.
double pole_distance(Vec2 q) { return kPi - 2.0 * std::atan(hypot2(q)); }

// Shared guard logic: returns Stop when the run must end early.
StepControl apply_guards(const Chart& chart, const SolverConfig& cfg, double t, Vec2 q,
                         GuardState& guard) {
  if (chart.pole_compactification) {
    if (pole_distance(q) < cfg.pole_guard) {
      guard.termination = Termination::PoleGuard;
      guard.t_last = t;
      guard.q_last = q;
      return StepControl::Stop;
    }
    return StepControl::Continue;
  }
  const bool out_x = !chart.periodic_x && (q.x <= chart.x0 || q.x >= chart.x1);
  const bool out_y = !chart.periodic_y && (q.y <= chart.y0 || q.y >= chart.y1);
  if (out_x || out_y) {
    guard.termination = Termination::ChartExit;
    guard.t_last = t;
    guard.q_last = q;
    return StepControl::Stop;
  }
  return StepControl::Continue;
}

[[noreturn]] void throw_chart_exit(const ExtremalTrajectory& traj) {
  const auto& last = traj.samples.back();
  std::ostringstream os;
  os << "trajectory left the chart; last valid state t = " << last.t << ", q = ("
     << last.state.q.x << ", " << last.state.q.y << "), theta = " << last.state.theta;
  throw DomainError(os.str());
}

}  // namespace

ExtremalTrajectory integrate_extremal(const CoZermeloProblem& pb, const FiberPoint& start,
                                      double T, const SolverConfig& cfg,
                                      const std::vector<double>& sample_times) {
  const Vec2 q0 = pb.metric->require_inside(start.q);
  // The (theta, q) chart parametrizes H, so the start lies on the level set
  // by construction; the residual check below exercises the reconstruction.
  const auto residual = [&pb](const FiberPoint& s) {
    return std::fabs(h_cozermelo(pb, covector_of(pb, s)) - 1.0);
  };
  if (residual({q0, start.theta}) > cfg.level_tol)
    throw ValidationError("start point is off the level surface");

  const OdeRhs rhs = [&pb](double, const double* y, double* dy) {
    const CoZermeloVelocity v = cozermelo_field(pb, {{y[0], y[1]}, y[2]});
    dy[0] = v.qdot.x;
    dy[1] = v.qdot.y;
    dy[2] = v.thetadot;
  };

  ExtremalTrajectory traj;
  const Chart& chart = pb.metric->chart();
  const auto emit = [&](double t, const double* y) {
    FiberPoint s{chart.wrap({y[0], y[1]}), wrap_angle(y[2])};
    traj.samples.push_back({t, s, residual(s)});
  };

  std::vector<double> y{q0.x, q0.y, start.theta};
  emit(0.0, y.data());

  std::vector<double> wanted(sample_times);
  std::sort(wanted.begin(), wanted.end());
  size_t next_sample = 0;
  double last_emitted = 0.0;

  GuardState guard;
  const StepCallback on_step = [&](const StepInterpolant& interp, const double* ynew) {
    if (!wanted.empty()) {
      double buf[3] = {0.0, 0.0, 0.0};
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
    return apply_guards(chart, cfg, interp.t1(), {ynew[0], ynew[1]}, guard);
  };

  OdeOptions opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.max_steps = cfg.max_steps;
  const OdeStats st = integrate_ode(rhs, 0.0, T, y, opts, on_step);
  traj.stats = {st.n_steps, st.n_accepted, st.n_rejected, st.n_rhs};
  traj.termination = guard.termination;
  if (!wanted.empty() && traj.termination == Termination::Completed &&
      (traj.samples.empty() || traj.samples.back().t < T)) {
    emit(T, y.data());
  }

  for (const auto& s : traj.samples)
    traj.hamiltonian_drift = std::max(traj.hamiltonian_drift, s.h_residual);
  if (traj.termination == Termination::ChartExit) throw_chart_exit(traj);
  if (traj.hamiltonian_drift > cfg.h_drift_tol)
    throw NumericalError("Hamiltonian drift " + std::to_string(traj.hamiltonian_drift) +
                         " exceeds tolerance");
  return traj;
}

ExtremalTrajectory integrate_extremal_zermelo(const ZermeloProblem& pb,
                                              const CotangentPoint& start, double T,
                                              const SolverConfig& cfg,
                                              const std::vector<double>& sample_times) {
  CotangentPoint cp{pb.metric->require_inside(start.q), start.p};
  const double h0 = h_zermelo(pb, cp);
  if (!(h0 > 0.0)) throw ValidationError("start covector has h <= 0");
  cp.p = (1.0 / h0) * cp.p;  // normalize onto the level surface
  if (std::fabs(h_zermelo(pb, cp) - 1.0) > cfg.level_tol)
    throw ValidationError("start covector could not be normalized onto h = 1");

  const OdeRhs rhs = [&pb](double, const double* y, double* dy) {
    const CanonicalVelocity v = zermelo_field_canonical(pb, {{y[0], y[1]}, {y[2], y[3]}});
    dy[0] = v.qdot.x;
    dy[1] = v.qdot.y;
    dy[2] = v.pdot.p1;
    dy[3] = v.pdot.p2;
  };

  ExtremalTrajectory traj;
  const Chart& chart = pb.metric->chart();
  const auto emit = [&](double t, const double* y) {
    const CotangentPoint here{{y[0], y[1]}, {y[2], y[3]}};
    const Vec2 a = pb.metric->covector_frame_components(pb.metric->chart().wrap(here.q), here.p);
    FiberPoint s{chart.wrap(here.q), wrap_angle(std::atan2(a.y, a.x))};
    traj.samples.push_back({t, s, std::fabs(h_zermelo(pb, {s.q, here.p}) - 1.0)});
  };

  std::vector<double> y{cp.q.x, cp.q.y, cp.p.p1, cp.p.p2};
  emit(0.0, y.data());

  std::vector<double> wanted(sample_times);
  std::sort(wanted.begin(), wanted.end());
  size_t next_sample = 0;
  double last_emitted = 0.0;

  GuardState guard;
  const StepCallback on_step = [&](const StepInterpolant& interp, const double* ynew) {
    if (!wanted.empty()) {
      double buf[4] = {0.0, 0.0, 0.0, 0.0};
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
    return apply_guards(chart, cfg, interp.t1(), {ynew[0], ynew[1]}, guard);
  };

  OdeOptions opts;
  opts.abs_tol = cfg.abs_tol;
  opts.rel_tol = cfg.rel_tol;
  opts.max_steps = cfg.max_steps;
  const OdeStats st = integrate_ode(rhs, 0.0, T, y, opts, on_step);
  traj.stats = {st.n_steps, st.n_accepted, st.n_rejected, st.n_rhs};
  traj.termination = guard.termination;
  if (!wanted.empty() && traj.termination == Termination::Completed &&
      (traj.samples.empty() || traj.samples.back().t < T)) {
    emit(T, y.data());
  }

  for (const auto& s : traj.samples)
    traj.hamiltonian_drift = std::max(traj.hamiltonian_drift, s.h_residual);
  if (traj.termination == Termination::ChartExit) throw_chart_exit(traj);
  if (traj.hamiltonian_drift > cfg.h_drift_tol)
    throw NumericalError("Hamiltonian drift " + std::to_string(traj.hamiltonian_drift) +
                         " exceeds tolerance");
  return traj;
}

}  // namespace znav
