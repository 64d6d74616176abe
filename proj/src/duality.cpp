#include "znav/duality.hpp"

#include <cmath>
#include <sstream>

#include "znav/rng.hpp"

namespace znav {

Rect chart_rect(const Chart& chart) { return {chart.x0, chart.x1, chart.y0, chart.y1}; }

namespace {

struct DriftRange {
  double min_norm, max_norm;
};

DriftRange scan_drift(const DriftSpec& drift, const Rect& r, int n) {
  DriftRange out{1e300, 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 q{r.x0 + (i + 0.5) / n * (r.x1 - r.x0), r.y0 + (j + 0.5) / n * (r.y1 - r.y0)};
      const double nm = drift.norm(q);
      out.min_norm = std::min(out.min_norm, nm);
      out.max_norm = std::max(out.max_norm, nm);
    }
  }
  return out;
}

// Checks the zero/nonvanishing/strictly-bounded trichotomy shared by both
// directions; returns true when the drift counts as identically zero.
bool precheck_drift(const DriftSpec& drift, const Rect& region, const DualizeOptions& opts) {
  const DriftRange rng = scan_drift(drift, region, opts.precheck_n);
  if (rng.max_norm <= opts.zero_tol) return true;
  if (rng.max_norm >= 1.0)
    throw ValidationError("dualize: drift reaches norm " + std::to_string(rng.max_norm) +
                          " >= 1 on the working region");
  if (rng.min_norm < opts.min_norm) {
    std::ostringstream os;
    os << "dualize: drift norm falls to " << rng.min_norm
       << " on the working region; the rotated frame is singular at drift zeros";
    throw ValidationError(os.str());
  }
  return false;
}

// Frame of the dual metric. `invert` distinguishes the two directions:
// Zermelo -> co-Zermelo scales the rotated frame by (w, sqrt(w)); the
// converse divides. w = 1 - |drift|^2.
FrameJets dual_frame_jets(const Metric& base, const DriftSpec& drift, Vec2 q, bool invert) {
  const FrameJets fr = base.frame_jets(q);
  const Jet2 u1 = drift.comp1(q);
  const Jet2 u2 = drift.comp2(q);
  const Jet2 n = sqrt(u1 * u1 + u2 * u2);
  const Jet2 ct = u1 / n;
  const Jet2 st = u2 / n;
  const Jet2 w = 1.0 - n * n;
  const Jet2 s1 = invert ? inv(w) : w;
  const Jet2 s2 = invert ? inv(sqrt(w)) : sqrt(w);
  FrameJets out;
  out.e1x = s1 * (ct * fr.e1x + st * fr.e2x);
  out.e1y = s1 * (ct * fr.e1y + st * fr.e2y);
  out.e2x = s2 * (ct * fr.e2x - st * fr.e1x);
  out.e2y = s2 * (ct * fr.e2y - st * fr.e1y);
  return out;
}

DriftSpec dual_drift(const std::shared_ptr<const Metric>& base, DriftSpec source, DriftKind kind) {
  // In the frame of the dual metric both constructions give components
  // (-|drift|, 0).
  DriftSpec d;
  d.kind = kind;
  d.norm_margin = source.norm_margin;
  d.comp1 = [base, source](Vec2 q) {
    const Jet2 u1 = source.comp1(q);
    const Jet2 u2 = source.comp2(q);
    return -sqrt(u1 * u1 + u2 * u2);
  };
  d.comp2 = [](Vec2) { return Jet2::constant(0.0); };
  return d;
}

}  // namespace

DualCoZermelo dualize_zermelo(const ZermeloProblem& pb, const DualizeOptions& opts) {
  const Rect region = opts.region.value_or(chart_rect(pb.metric->chart()));
  const bool zero = precheck_drift(pb.drift, region, opts);
  if (zero) {
    return {CoZermeloProblem(pb.metric, DriftSpec::zero(DriftKind::OneForm)),
            [](Vec2) { return EllipseFields{1.0, 1.0, 0.0}; }, true, pb.metric, pb.drift};
  }
  auto base = pb.metric;
  DriftSpec drift = pb.drift;
  auto metric = std::make_shared<FrameMetric>(
      base->chart(), [base, drift](Vec2 q) { return dual_frame_jets(*base, drift, q, false); });
  DualCoZermelo out{CoZermeloProblem(metric, dual_drift(base, drift, DriftKind::OneForm)),
                    {}, false, base, drift};
  out.ellipse = [drift](Vec2 q) {
    const double n = drift.norm(q);
    const double w = 1.0 - n * n;
    return EllipseFields{1.0 / w, 1.0 / std::sqrt(w), n / w};
  };
  return out;
}

DualZermelo dualize_cozermelo(const CoZermeloProblem& pb, const DualizeOptions& opts) {
  const Rect region = opts.region.value_or(chart_rect(pb.metric->chart()));
  const bool zero = precheck_drift(pb.drift, region, opts);
  if (zero) {
    return {ZermeloProblem(pb.metric, DriftSpec::zero(DriftKind::VectorField)), true, pb.metric,
            pb.drift};
  }
  auto base = pb.metric;
  DriftSpec drift = pb.drift;
  auto metric = std::make_shared<FrameMetric>(
      base->chart(), [base, drift](Vec2 q) { return dual_frame_jets(*base, drift, q, true); });
  return {ZermeloProblem(metric, dual_drift(base, drift, DriftKind::VectorField)), false,
          base, drift};
}

DualityReport verify_duality(const std::function<double(const CotangentPoint&)>& h_a,
                             const std::function<double(const CotangentPoint&)>& h_b, Rect region,
                             int n_samples, double tol, std::uint64_t seed) {
  DualityReport report;
  report.n_samples = n_samples;
  report.tol = tol;
  // Per-index RNG streams: the sample set (and the argmax below) does not
  // depend on the thread count.
  std::vector<double> errs(n_samples);
  std::vector<CotangentPoint> pts(n_samples);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_samples; ++i) {
    SplitMix64 rng(seed, static_cast<std::uint64_t>(i));
    CotangentPoint cp;
    cp.q.x = region.x0 + rng.uniform() * (region.x1 - region.x0);
    cp.q.y = region.y0 + rng.uniform() * (region.y1 - region.y0);
    const double ang = rng.uniform() * kTwoPi;
    const double mag = std::pow(10.0, -1.0 + 2.0 * rng.uniform());  // |p| in [0.1, 10]
    cp.p = {mag * std::cos(ang), mag * std::sin(ang)};
    errs[i] = std::fabs(h_a(cp) - h_b(cp));
    pts[i] = cp;
  }
  for (int i = 0; i < n_samples; ++i) {
    if (errs[i] > report.max_abs_error) {
      report.max_abs_error = errs[i];
      report.worst = pts[i];
    }
  }
  report.pass = report.max_abs_error < tol;
  return report;
}

DualityReport verify_duality(const ZermeloProblem& pb, const DualCoZermelo& dual, int n_samples,
                             double tol, std::uint64_t seed, const std::optional<Rect>& region) {
  const Rect r = region.value_or(chart_rect(pb.metric->chart()));
  return verify_duality([&pb](const CotangentPoint& cp) { return h_zermelo(pb, cp); },
                        [&dual](const CotangentPoint& cp) { return h_cozermelo(dual.problem, cp); },
                        r, n_samples, tol, seed);
}

DualityReport verify_duality(const CoZermeloProblem& pb, const DualZermelo& dual, int n_samples,
                             double tol, std::uint64_t seed, const std::optional<Rect>& region) {
  const Rect r = region.value_or(chart_rect(pb.metric->chart()));
  return verify_duality([&pb](const CotangentPoint& cp) { return h_cozermelo(pb, cp); },
                        [&dual](const CotangentPoint& cp) { return h_zermelo(dual.problem, cp); },
                        r, n_samples, tol, seed);
}

}  // namespace znav
