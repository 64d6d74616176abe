// Timing harness comparing the serial reference kernels with the OpenMP
// ones on representative workloads: Gauss-Bonnet quadrature, Liouville
// integrals and curvature grids.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "znav/curvature.hpp"
#include "znav/integrals.hpp"

using namespace znav;

namespace {

CoZermeloProblem bench_problem() {
  auto surf = ConformalSurface::from_f(torus_chart(), [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.2 * (sin(x) * sin(y) + 0.5 * cos(2.0 * x));
  });
  DriftSpec d;
  d.kind = DriftKind::OneForm;
  d.comp1 = [](Vec2 q) {
    const Jet2 x = Jet2::var_x(q.x), y = Jet2::var_y(q.y);
    return 0.35 * sin(x) * cos(y);
  };
  d.comp2 = [](Vec2 q) { return 0.3 * cos(Jet2::var_x(q.x)); };
  return CoZermeloProblem(surf, d);
}

template <class F>
double time_ms(const F& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 64;
  int repeats = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--grid" && i + 1 < argc) n = std::atoi(argv[++i]);
    else if (arg == "--repeat" && i + 1 < argc) repeats = std::atoi(argv[++i]);
#ifdef _OPENMP
    else if (arg == "--threads" && i + 1 < argc) omp_set_num_threads(std::atoi(argv[++i]));
#endif
    else {
      std::fprintf(stderr, "usage: %s [--grid N] [--repeat R] [--threads T]\n", argv[0]);
      return 2;
    }
  }

  const CoZermeloProblem pb = bench_problem();
  const QuadratureGrid grid = QuadratureGrid::for_chart(pb.metric->chart(), n, n, n);

  int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
  {
#pragma omp single
    threads = omp_get_num_threads();
  }
#endif
  std::printf("grid %d^3, %d thread(s), best of %d runs\n", n, threads, repeats);
  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

  double ref_serial = 0.0, ref_parallel = 0.0;
  const auto report = [&](const char* name, double s_ms, double p_ms) {
    std::printf("%-24s %12.2f %12.2f %7.2fx\n", name, s_ms, p_ms, s_ms / p_ms);
  };

  {
    GaussBonnetReport rs, rp;
    const double s_ms = time_ms([&] { rs = gauss_bonnet_report(pb, grid, Exec::Serial); },
                                repeats);
    const double p_ms = time_ms([&] { rp = gauss_bonnet_report(pb, grid, Exec::Parallel); },
                                repeats);
    report("gauss_bonnet_report", s_ms, p_ms);
    ref_serial = rs.lhs_cozermelo;
    ref_parallel = rp.lhs_cozermelo;
  }
  {
    const auto f = [&](const FiberPoint& s) {
      return fiber_point_data(pb, s.q).kappa_cozermelo(s.theta);
    };
    const double s_ms =
        time_ms([&] { (void)integrate_over_H(pb, f, grid, Exec::Serial); }, repeats);
    const double p_ms =
        time_ms([&] { (void)integrate_over_H(pb, f, grid, Exec::Parallel); }, repeats);
    report("liouville_integral", s_ms, p_ms);
  }
  {
    const double s_ms = time_ms(
        [&] { (void)integrate_over_M(*pb.metric, [](Vec2 q) { return std::sin(q.x) + 2.0; },
                                     grid, Exec::Serial); },
        repeats);
    const double p_ms = time_ms(
        [&] { (void)integrate_over_M(*pb.metric, [](Vec2 q) { return std::sin(q.x) + 2.0; },
                                     grid, Exec::Parallel); },
        repeats);
    report("surface_integral", s_ms, p_ms);
  }

  std::printf("consistency: |serial - parallel| = %.3e\n",
              std::fabs(ref_serial - ref_parallel));
  return 0;
}
