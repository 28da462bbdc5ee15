#pragma once

#include <cstdint>

// Counter-based random streams. Every draw site is addressed by
// (root seed, trial, phase, site); derived streams are independent of
// iteration order and of how work is split across threads.

namespace loctensor::rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Stream {
public:
    explicit Stream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    bool bernoulli(double p) { return u01() < p; }

    int sign() { return (next_u64() & 1u) ? 1 : -1; }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

inline Stream substream(std::uint64_t root, std::uint64_t trial,
                        std::uint64_t phase, std::uint64_t site) {
    std::uint64_t s = mix64(root ^ 0x5851f42d4c957f2dULL);
    s = mix64(s ^ mix64(trial + 1));
    s = mix64(s ^ mix64(phase + 1));
    s = mix64(s ^ mix64(site + 1));
    return Stream(s);
}

} // namespace loctensor::rng
