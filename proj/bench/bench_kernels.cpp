// Times the serial reference kernels against their OpenMP counterparts on a
// batch of generated meshes. Build target only; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <string>

#include "confdiam/curvature.hpp"
#include "confdiam/generators.hpp"
#include "confdiam/geodesy.hpp"
#include "confdiam/parallel.hpp"
#include "confdiam/plateau.hpp"

using namespace confdiam;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* kernel, const char* mesh, double serial, double parallel) {
    std::printf("%-22s %-26s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n", kernel, mesh,
                serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_worker_count(std::stoi(argv[1]));
    std::printf("workers: %d\n\n", worker_count());

    const auto e3 = ConformalAmbient::euclidean();
    const auto ball = ConformalAmbient::hyperbolic_ball();

    {
        const auto mesh = make_disk(0.8, 120, 360, 0.2, 7);  // ~43k vertices
        const std::string label =
            "disk " + std::to_string(mesh.vertex_count()) + "v";
        const double s = time_best_of(3, [&] { curvature_field(mesh, ball, Exec::Serial); });
        const double p = time_best_of(3, [&] { curvature_field(mesh, ball, Exec::OpenMP); });
        report("curvature field", label.c_str(), s, p);

        const double gs = time_best_of(3, [&] { area_gradient(mesh, ball, Exec::Serial); });
        const double gp = time_best_of(3, [&] { area_gradient(mesh, ball, Exec::OpenMP); });
        report("area gradient", label.c_str(), gs, gp);
    }
    {
        const auto mesh = make_icosphere(4);  // 2562 vertices, all-pairs Dijkstra
        const std::string label =
            "icosphere " + std::to_string(mesh.vertex_count()) + "v";
        DiameterOptions serial_opts, parallel_opts;
        serial_opts.exec = Exec::Serial;
        parallel_opts.exec = Exec::OpenMP;
        const double s = time_best_of(2, [&] { intrinsic_diameter(mesh, e3, serial_opts); });
        const double p = time_best_of(2, [&] { intrinsic_diameter(mesh, e3, parallel_opts); });
        report("intrinsic diameter", label.c_str(), s, p);
    }
    return 0;
}
