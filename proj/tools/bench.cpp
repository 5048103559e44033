// Benchmark comparing the serial reference kernels against the OpenMP
// variants: wedge powers of the Toda deformation bivector and the PDE
// right-hand side. Outputs wall times and verifies the results agree.

#include "nonnoether/geom.hpp"
#include "nonnoether/models.hpp"
#include "nonnoether/numverify.hpp"
#include "nonnoether/symmetry.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace nonnoether;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_wedge() {
    PhaseModel m = build_toda(5);
    MultiVec hatW = schouten(m.E, m.W);

    set_parallel_wedge(false);
    auto t0 = std::chrono::steady_clock::now();
    MultiVec serial = wedge_power(hatW, 4);
    double ts = seconds_since(t0);

    set_parallel_wedge(true);
    t0 = std::chrono::steady_clock::now();
    MultiVec parallel = wedge_power(hatW, 4);
    double tp = seconds_since(t0);
    set_parallel_wedge(false);

    std::printf("wedge_power(hatW, 4), toda5:  serial %.3fs  parallel %.3fs  match=%s\n", ts, tp,
                serial == parallel ? "yes" : "NO");
}

void bench_pde() {
    PdeModel model = build_pde(make_pde_spec(PdeEquation::KdV, 80.0, 4096));
    std::vector<double> u = soliton_profile(model, 0.5, 20.0);
    std::vector<double> out_s(u.size()), out_p(u.size());

    const int reps = 2000;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) model.rhs(u, out_s, false);
    double ts = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) model.rhs(u, out_p, true);
    double tp = seconds_since(t0);

    bool match = true;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (out_s[i] != out_p[i]) match = false;
    std::printf("kdv rhs, N=4096, %d evals:    serial %.3fs  parallel %.3fs  match=%s\n", reps, ts,
                tp, match ? "yes" : "NO");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel paths run serially\n");
#endif
    bench_wedge();
    bench_pde();
    return 0;
}
