// Jacobi/Hill system along co-Zermelo extremals, conjugate-point detection
// and the Riccati limit estimator y+.
//
// beta, gamma solve x'' + kappa_t x = 0 with (beta, beta')(0) = (1, 0) and
// (gamma, gamma')(0) = (0, 1), integrated jointly with the extremal so
// kappa_t = kappa(e^{t h}(lambda)) is sampled exactly along the flow. A
// conjugate time is the first positive zero of gamma; y_t = beta / gamma
// decreases strictly and its finite-T value estimates y+.

#ifndef ZNAV_CONJUGATE_HPP
#define ZNAV_CONJUGATE_HPP

#include <array>
#include <optional>

#include "znav/curvature.hpp"
#include "znav/hamiltonian.hpp"

namespace znav {

struct JacobiArc {
  ExtremalTrajectory along;
  std::vector<double> beta, beta_dot, gamma, gamma_dot;  // aligned with along.samples
  // Max |beta gamma' - beta' gamma - 1| over samples, measured relative to
  // the scale max(1, |beta gamma'| + |beta' gamma|): once the Hill solutions
  // grow past ~1e8 the absolute residual is pure cancellation noise, while
  // the scaled residual still measures symplecticity of the integration.
  double wronskian_drift = 0.0;

  double y(size_t i) const { return beta[i] / gamma[i]; }
};

JacobiArc jacobi_solve(const CoZermeloProblem& pb, const FiberPoint& start, double T,
                       const SolverConfig& cfg = {}, const std::vector<double>& sample_times = {});

struct ConjugateReport {
  std::optional<double> first_conjugate_time;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // final bisection bracket
  double gamma_lo = 0.0, gamma_hi = 0.0;      // gamma at the bracket ends
  double t_max = 0.0;
};

// Scans (1e-6, T_max] for the first sign change of gamma on accepted steps
// and refines it by bisection on the dense output to width 1e-10. Absence
// of a zero is a valid result (first_conjugate_time empty).
ConjugateReport first_conjugate_time(const CoZermeloProblem& pb, const FiberPoint& start,
                                     double T_max, const SolverConfig& cfg = {});

struct RiccatiEstimate {
  double estimate = 0.0;
  bool converged = false;
  double tail_variation = 0.0;            // |y_T - y_{3T/4}|
  std::array<double, 3> checkpoints{};    // T/2, 3T/4, T
  std::array<double, 3> y_values{};
  bool monotone = false;                  // y decreasing across checkpoints
};

// Estimates y+ = lim y_t from y_T; throws ValidationError when a conjugate
// point exists in (0, T]. Monotone decrease is validated up to solver noise
// (slack 1e-8).
RiccatiEstimate riccati_yplus(const CoZermeloProblem& pb, const FiberPoint& start, double T,
                              double convergence_tol, const SolverConfig& cfg = {});

}  // namespace znav

#endif
