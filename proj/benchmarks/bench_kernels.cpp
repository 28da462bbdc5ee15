// Timing comparison between the serial reference paths and the OpenMP
// kernels. The chunked reductions make every kernel's result independent of
// the thread count, so each row also asserts that the outputs agree.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "loctensor/engine.hpp"
#include "loctensor/instance.hpp"
#include "loctensor/kernels.hpp"
#include "loctensor/m3l2.hpp"
#include "loctensor/triangle_free.hpp"

using namespace loctensor;

namespace {

double time_of(const std::function<double()>& f, double* result) {
    const auto t0 = std::chrono::steady_clock::now();
    *result = f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int g_baseline_threads = 1; // captured once at startup

void set_threads(int n) {
#if defined(_OPENMP)
    omp_set_num_threads(n);
#else
    (void)n;
#endif
}

void row(const char* name, const std::function<double()>& serial,
         const std::function<double()>& parallel) {
    double serial_val = 0.0, parallel_val = 0.0;
    set_threads(1);
    const double ts = time_of(serial, &serial_val);
    set_threads(g_baseline_threads);
    const double tp = time_of(parallel, &parallel_val);
    const bool agree = std::abs(serial_val - parallel_val) <=
                       1e-9 * std::max(1.0, std::abs(serial_val));
    std::printf("%-34s %9.3f s %9.3f s  x%-5.2f (%d threads)  %s\n", name, ts, tp,
                tp > 0 ? ts / tp : 0.0, g_baseline_threads, agree ? "values agree" : "VALUES DIFFER");
}

} // namespace

int main() {
    g_baseline_threads = kernels::max_threads();
    std::printf("%-34s %11s %11s  %s\n", "kernel", "serial", "openmp", "speedup");

    row("mc_local_subgraph (2e7 samples)",
        [] { return tf::mc_local_subgraph_reference(3, InitKind::ContinuousUniform, 0.6, 20000000, 1).value; },
        [] { return tf::mc_local_subgraph(3, InitKind::ContinuousUniform, 0.6, 20000000, 1).value; });

    {
        const Instance inst = gen_max3lin2(21, 3, 2);
        row("cubic exhaustive oracle (N=21)",
            [&] { return m3l2::expansion_coefficient_exhaustive(inst, 3); },
            [&] { return m3l2::expansion_coefficient_exhaustive(inst, 3); });
    }

    {
        const Instance inst = gen_max3lin2(96, 16, 5);
        const double c0 = 0.25 * std::pow(16.0, -0.75);
        row("one-step trials (N=96, 4e4 runs)",
            [&] { return m3l2::run(inst, c0, 40000, 7).mean; },
            [&] { return m3l2::run(inst, c0, 40000, 7).mean; });
    }

    row("threshold scan (D = 3..800)",
        [] { return tf::scaling_scan(3, 800).back().thr_improvement; },
        [] { return tf::scaling_scan(3, 800).back().thr_improvement; });

    return 0;
}
