// PMP Hamiltonians of the Zermelo and co-Zermelo problems, their flows,
// and extremal integration.
//
// Zermelo:    h(lambda) = <lambda, X(q)> + |lambda|_g, integrated in
//             canonical (q, p) coordinates with numeric gradients of h.
// co-Zermelo: h(lambda) = (-<l,U>_g + sqrt(<l,U>_g^2 + (1-|U|_g^2)|l|_g^2))
//             / (1-|U|_g^2), integrated in the explicit (theta, q) chart of
//             the level surface H, where the field reads
//             (cos t e1 + sin t e2)/phi,  theta' = (c1 cos t + c2 sin t +
//             Omega)/phi.

#ifndef ZNAV_HAMILTONIAN_HPP
#define ZNAV_HAMILTONIAN_HPP

#include <optional>
#include <vector>

#include "znav/drift.hpp"
#include "znav/geometry.hpp"
#include "znav/ode.hpp"

namespace znav {

struct CotangentPoint {
  Vec2 q;
  Cov2 p;
};

struct FiberPoint {
  Vec2 q;
  double theta = 0.0;
};

// Level-1 fiber parametrizations. For co-Zermelo problems the fiber point
// (q, theta) is the covector Upsilon + cos(theta) e1* + sin(theta) e2*; for
// Zermelo problems it is the polar point rho(theta)(cos(theta) e1* +
// sin(theta) e2*) with rho = 1/(1 + |X| cos(theta - theta^X)).
CotangentPoint covector_of(const CoZermeloProblem& pb, const FiberPoint& s);
FiberPoint fiber_of(const CoZermeloProblem& pb, const CotangentPoint& cp, double level_tol = 1e-9);
CotangentPoint covector_of(const ZermeloProblem& pb, const FiberPoint& s);
FiberPoint fiber_of(const ZermeloProblem& pb, const CotangentPoint& cp, double level_tol = 1e-9);

double h_zermelo(const ZermeloProblem& pb, const CotangentPoint& cp);
double h_cozermelo(const CoZermeloProblem& pb, const CotangentPoint& cp);

struct CoZermeloVelocity {
  Vec2 qdot;
  double thetadot = 0.0;
};
CoZermeloVelocity cozermelo_field(const CoZermeloProblem& pb, const FiberPoint& s);

struct CanonicalVelocity {
  Vec2 qdot;
  Cov2 pdot;
};
// Canonical equations qdot = dh/dp, pdot = -dh/dq with central differences
// (step 1e-6, coordinate-scaled).
CanonicalVelocity zermelo_field_canonical(const ZermeloProblem& pb, const CotangentPoint& cp);

struct SolverConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_steps = 10'000'000;
  double h_drift_tol = 1e-8;     // max admissible |h - 1| along the flow
  double pole_guard = 1e-3;      // min spherical distance to a compactified pole
  double level_tol = 1e-9;       // start must satisfy |h - 1| < level_tol
};

struct SolverStats {
  long n_steps = 0;
  long n_accepted = 0;
  long n_rejected = 0;
  long n_rhs = 0;
};

enum class Termination { Completed, ChartExit, PoleGuard };

struct ExtremalTrajectory {
  struct Sample {
    double t = 0.0;
    FiberPoint state;       // periodic coordinates wrapped, theta in [0, 2pi)
    double h_residual = 0.0;
  };
  std::vector<Sample> samples;
  double hamiltonian_drift = 0.0;  // max |h - 1| over samples
  SolverStats stats;
  Termination termination = Termination::Completed;

  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }
};

// Integrates the co-Zermelo extremal through `start` for time T. When
// sample_times is empty, samples land on accepted steps; otherwise exactly
// at the requested times (plus the endpoints). Chart exit raises DomainError
// (message carries the last valid state); a compactified-pole approach stops
// the run with Termination::PoleGuard.
ExtremalTrajectory integrate_extremal(const CoZermeloProblem& pb, const FiberPoint& start,
                                      double T, const SolverConfig& cfg = {},
                                      const std::vector<double>& sample_times = {});

// Same contract for the canonical Zermelo flow; the start covector is
// normalized onto h = 1 first.
ExtremalTrajectory integrate_extremal_zermelo(const ZermeloProblem& pb,
                                              const CotangentPoint& start, double T,
                                              const SolverConfig& cfg = {},
                                              const std::vector<double>& sample_times = {});

double wrap_angle(double theta);  // into [0, 2pi)

}  // namespace znav

#endif
