#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

// Deterministic parallel reductions. Work is split into fixed-size chunks
// whose partial sums are combined in chunk order, so the result does not
// depend on the number of threads. Serial reference variants keep the
// plain accumulation loop for testing and benchmarking.

namespace loctensor::kernels {

inline constexpr std::uint64_t kDefaultChunk = 1u << 14;

// sum of f(i) for i in [0, n), OpenMP over chunks
template <class F>
double chunked_sum(std::uint64_t n, F&& f, std::uint64_t chunk = kDefaultChunk) {
    if (n == 0) return 0.0;
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_chunks); ++b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * chunk;
        const std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
        double acc = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) acc += f(i);
        partial[static_cast<std::size_t>(b)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// (sum f, sum f^2), for mean/stderr in one pass
template <class F>
std::pair<double, double> chunked_sum2(std::uint64_t n, F&& f,
                                       std::uint64_t chunk = kDefaultChunk) {
    if (n == 0) return {0.0, 0.0};
    const std::uint64_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<double> ps(n_chunks, 0.0), ps2(n_chunks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_chunks); ++b) {
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * chunk;
        const std::uint64_t hi = lo + chunk < n ? lo + chunk : n;
        double acc = 0.0, acc2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const double x = f(i);
            acc += x;
            acc2 += x * x;
        }
        ps[static_cast<std::size_t>(b)] = acc;
        ps2[static_cast<std::size_t>(b)] = acc2;
    }
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t b = 0; b < n_chunks; ++b) {
        s += ps[b];
        s2 += ps2[b];
    }
    return {s, s2};
}

// serial references: single straight loop, no chunking
template <class F>
double sum_serial(std::uint64_t n, F&& f) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) acc += f(i);
    return acc;
}

template <class F>
std::pair<double, double> sum2_serial(std::uint64_t n, F&& f) {
    double acc = 0.0, acc2 = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = f(i);
        acc += x;
        acc2 += x * x;
    }
    return {acc, acc2};
}

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace loctensor::kernels
