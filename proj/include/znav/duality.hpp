// Constructive duality between Zermelo and co-Zermelo problems.
//
// Given (g, X) with 0 < |X|_g < 1 on the working region, the level curve
// H_q is an ellipse around a focus; re-reading it as a drifted unit circle
// of a new metric gives the dual pair (g~, Y~):
//   e~1* = (1-|X|^2)^{-1}   e1^{X*},   e~2* = (1-|X|^2)^{-1/2} e2^{X*},
//   Y~   = -|X| (1-|X|^2)^{-1} e1^{X*} = -|X| e~1*,
// so |Y~|_{g~} = |X|_g and the two Hamiltonians agree. The converse
// construction mirrors the roles and is certified numerically.

#ifndef ZNAV_DUALITY_HPP
#define ZNAV_DUALITY_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "znav/hamiltonian.hpp"

namespace znav {

struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

struct DualizeOptions {
  std::optional<Rect> region;  // working region; default: the whole chart
  double min_norm = 1e-6;      // nonvanishing-drift floor on the region
  double zero_tol = 1e-12;     // below this max norm the drift counts as zero
  int precheck_n = 64;         // sampling resolution for the pre-checks
};

// Ellipse data of the Zermelo level curve H_q (diagnostics).
struct EllipseFields {
  double semimajor = 0.0;   // a = (1-|X|^2)^{-1}
  double semiminor = 0.0;   // b = (1-|X|^2)^{-1/2}
  double focal = 0.0;       // c = |X| (1-|X|^2)^{-1}
};

struct DualCoZermelo {
  CoZermeloProblem problem;           // dual problem (g~, Y~)
  std::function<EllipseFields(Vec2)> ellipse;
  bool zero_drift = false;
  std::shared_ptr<const Metric> source_metric;  // provenance: the (g, X) pair
  DriftSpec source_drift;
};

struct DualZermelo {
  ZermeloProblem problem;             // dual problem (g~, X~)
  bool zero_drift = false;
  std::shared_ptr<const Metric> source_metric;  // provenance: the (g, Y) pair
  DriftSpec source_drift;
};

DualCoZermelo dualize_zermelo(const ZermeloProblem& pb, const DualizeOptions& opts = {});
DualZermelo dualize_cozermelo(const CoZermeloProblem& pb, const DualizeOptions& opts = {});

struct DualityReport {
  double max_abs_error = 0.0;
  CotangentPoint worst;
  int n_samples = 0;
  double tol = 0.0;
  bool pass = false;
};

// Samples n covectors (q uniform in `region`, p uniform in direction with
// |p| log-uniform in [0.1, 10]) and reports max |h_A - h_B|. Deterministic
// for a fixed seed, independent of thread count.
DualityReport verify_duality(const std::function<double(const CotangentPoint&)>& h_a,
                             const std::function<double(const CotangentPoint&)>& h_b, Rect region,
                             int n_samples, double tol, std::uint64_t seed = 1);

DualityReport verify_duality(const ZermeloProblem& pb, const DualCoZermelo& dual, int n_samples,
                             double tol, std::uint64_t seed = 1,
                             const std::optional<Rect>& region = {});
DualityReport verify_duality(const CoZermeloProblem& pb, const DualZermelo& dual, int n_samples,
                             double tol, std::uint64_t seed = 1,
                             const std::optional<Rect>& region = {});

Rect chart_rect(const Chart& chart);

}  // namespace znav

#endif
