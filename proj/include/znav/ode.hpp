// Adaptive Dormand-Prince 5(4) integrator with the classic fourth-order
// continuous extension. Follows the DOPRI5 scheme of Hairer, Norsett and
// Wanner (Solving ODEs I), restructured around a per-step callback so
// callers can sample dense output, locate events and abort integration.

#ifndef ZNAV_ODE_HPP
#define ZNAV_ODE_HPP

#include <functional>
#include <vector>

#include "znav/errors.hpp"

namespace znav {

struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 0.0;  // 0 = choose automatically
  long max_steps = 10'000'000;
};

struct OdeStats {
  long n_steps = 0;
  long n_accepted = 0;
  long n_rejected = 0;
  long n_rhs = 0;
};

// Dense-output view of one accepted step [t0, t1].
class StepInterpolant {
 public:
  StepInterpolant(double t0, double h, const std::vector<double>* cont, int dim)
      : t0_(t0), h_(h), cont_(cont), dim_(dim) {}

  double t0() const { return t0_; }
  double t1() const { return t0_ + h_; }

  double component(double t, int i) const {
    const double s = (t - t0_) / h_;
    const double s1 = 1.0 - s;
    const std::vector<double>& c = *cont_;
    return c[i] + s * (c[dim_ + i] +
                       s1 * (c[2 * dim_ + i] + s * (c[3 * dim_ + i] + s1 * c[4 * dim_ + i])));
  }
  void state(double t, double* y) const {
    for (int i = 0; i < dim_; ++i) y[i] = component(t, i);
  }

 private:
  double t0_, h_;
  const std::vector<double>* cont_;
  int dim_;
};

enum class StepControl { Continue, Stop };

using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;
using StepCallback = std::function<StepControl(const StepInterpolant&, const double* y_new)>;

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). y is updated in place.
// on_step (optional) runs after every accepted step. Throws NumericalError
// on step-size underflow or step-budget exhaustion.
OdeStats integrate_ode(const OdeRhs& rhs, double t0, double t1, std::vector<double>& y,
                       const OdeOptions& opts, const StepCallback& on_step = {});

}  // namespace znav

#endif
