// Timing comparison of the OpenMP kernels against the serial reference
// implementations, plus a whole-pipeline timing. Results are checked for
// bitwise agreement while timing.
#include <chrono>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "starshape/calculus.hpp"
#include "starshape/experiments.hpp"
#include "starshape/kernels.hpp"
#include "starshape/parallel.hpp"

using namespace starshape;
using clock_type = std::chrono::steady_clock;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void bench_axis_matrix(int polar, int azimuth, int reps) {
    GridPtr grid = make_grid(2, {polar, azimuth});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> in(grid->nodes()), out_s(grid->nodes()), out_p(grid->nodes());
    for (double& x : in) x = uni(rng);

    const auto& d1 = grid->axes[0].d1;
    std::vector<double> m(static_cast<std::size_t>(polar) * polar);
    for (int i = 0; i < polar; ++i)
        for (int j = 0; j < polar; ++j) m[static_cast<std::size_t>(i) * polar + j] = d1(i, j);

    const std::size_t outer = grid->outer_extent(0);
    const std::size_t inner = grid->inner_extent(0);
    const double t_serial = time_best_of(reps, [&] {
        kernels::apply_axis_matrix_serial(m.data(), polar, in.data(), out_s.data(), outer, inner);
    });
    const double t_omp = time_best_of(reps, [&] {
        kernels::apply_axis_matrix_omp(m.data(), polar, in.data(), out_p.data(), outer, inner);
    });
    const bool same = std::memcmp(out_s.data(), out_p.data(), out_s.size() * 8) == 0;
    std::printf("axis_matrix   %4dx%-4d  serial %8.3f ms  omp %8.3f ms  speedup %5.2fx  %s\n",
                polar, azimuth, t_serial, t_omp, t_serial / t_omp,
                same ? "bit-identical" : "MISMATCH");
}

void bench_dot(std::size_t len, int reps) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        a[i] = uni(rng);
        b[i] = uni(rng);
    }
    double rs = 0.0, rp = 0.0;
    const double t_serial = time_best_of(reps, [&] { rs = kernels::dot2_serial(a, b); });
    const double t_omp = time_best_of(reps, [&] { rp = kernels::dot2_omp(a, b); });
    std::printf("weighted_sum  n=%-8zu serial %8.3f ms  omp %8.3f ms  speedup %5.2fx  %s\n",
                len, t_serial, t_omp, t_serial / t_omp,
                rs == rp ? "bit-identical" : "MISMATCH");
}

void bench_bundle(int polar, int azimuth, int reps) {
    GridPtr grid = make_grid(2, {polar, azimuth});
    ScalarField f = coordinate_field(grid, 2);
    for (double& x : f.v) x *= 0.1;
    RadialSurface s = make_surface(f, "bench");

    set_parallel_enabled(false);
    GeometryBundle ref = compute_geometry(s);
    const double t_serial = time_best_of(reps, [&] { compute_geometry(s); });
    set_parallel_enabled(true);
    GeometryBundle par = compute_geometry(s);
    const double t_omp = time_best_of(reps, [&] { compute_geometry(s); });
    const bool same =
        std::memcmp(ref.shape_op.v.data(), par.shape_op.v.data(), ref.shape_op.v.size() * 8) == 0;
    std::printf("geometry      %4dx%-4d  serial %8.3f ms  omp %8.3f ms  speedup %5.2fx  %s\n",
                polar, azimuth, t_serial, t_omp, t_serial / t_omp,
                same ? "bit-identical" : "MISMATCH");
}

void bench_pipeline(int polar, int azimuth) {
    SurfaceSpec spec;
    spec.kind = SurfaceKind::ellipsoid;
    spec.n = 2;
    spec.shape = {polar, azimuth};
    spec.semi_axes = {1.0, 1.0, 1.05};

    set_parallel_enabled(false);
    const double t_serial = time_best_of(1, [&] { run_pipeline(spec, 2.0); });
    set_parallel_enabled(true);
    const double t_omp = time_best_of(1, [&] { run_pipeline(spec, 2.0); });
    std::printf("pipeline      %4dx%-4d  serial %8.3f ms  omp %8.3f ms  speedup %5.2fx\n",
                polar, azimuth, t_serial, t_omp, t_serial / t_omp);
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) quick = true;
        if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            set_thread_count(std::atoi(argv[++i]));
    }

    std::printf("threads: %d\n", thread_count());
    if (quick) {
        bench_axis_matrix(32, 64, 3);
        bench_dot(1 << 16, 3);
        bench_bundle(32, 64, 3);
        return 0;
    }

    bench_axis_matrix(64, 128, 10);
    bench_axis_matrix(128, 256, 10);
    bench_dot(1 << 20, 10);
    bench_dot(1 << 24, 5);
    bench_bundle(64, 128, 5);
    bench_bundle(128, 256, 5);
    bench_pipeline(32, 64);
    bench_pipeline(64, 128);
    return 0;
}
