#pragma once

// Test-only oracles. Each one re-derives a quantity by direct enumeration,
// independent of the library's evaluation path it is checked against.

#include <cstdint>
#include <map>
#include <vector>

#include "loctensor/instance.hpp"
#include "loctensor/triangle_free.hpp"

namespace oracles {

// E[-1/2 Z_i Z_j] for a flip rule on the degree-d star-pair subgraph, by
// enumerating all 2^(2d) sign configurations. Layout: site 0 = i, site 1 = j,
// sites 2..d are the private neighbors of i, sites d+1..2d-1 of j.
inline double brute_rule_improvement(const loctensor::tf::FlipRule& rule) {
    const int d = rule.d;
    const int n = 2 * d;
    const std::uint64_t configs = std::uint64_t{1} << n;
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < configs; ++mask) {
        const int vi = (mask & 1u) ? 1 : -1;
        const int vj = (mask & 2u) ? 1 : -1;
        int mi = vi == vj ? 1 : 0;
        int mj = mi;
        for (int r = 0; r < d - 1; ++r) {
            const int u = (mask >> (2 + r) & 1u) ? 1 : -1;
            if (u == vi) ++mi;
            const int w = (mask >> (d + 1 + r) & 1u) ? 1 : -1;
            if (w == vj) ++mj;
        }
        // spins round independently given the configuration
        const double ezi = rule.q[static_cast<std::size_t>(mi)] * vi;
        const double ezj = rule.q[static_cast<std::size_t>(mj)] * vj;
        acc += ezi * ezj;
    }
    return -0.5 * acc / static_cast<double>(configs);
}

// Same quantity for a single linear step v1 = v0 - c * A v0 with sign
// rounding, enumerating support^(2d) initial configurations directly
// (no neighbor-sum reduction). An exact zero counts as expectation 0.
inline double brute_linear_step_improvement(int d, const std::vector<double>& support, double c) {
    const int n = 2 * d;
    const std::size_t p = support.size();
    std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
    auto sgn0 = [](double x) { return x > 1e-12 ? 1.0 : (x < -1e-12 ? -1.0 : 0.0); };
    double acc = 0.0;
    std::uint64_t total = 1;
    for (int s = 0; s < n; ++s) total *= p;
    for (std::uint64_t it = 0; it < total; ++it) {
        const double vi = support[digit[0]];
        const double vj = support[digit[1]];
        double si = vj, sj = vi;
        for (int r = 0; r < d - 1; ++r) {
            si += support[digit[static_cast<std::size_t>(2 + r)]];
            sj += support[digit[static_cast<std::size_t>(d + 1 + r)]];
        }
        acc += sgn0(vi - c * si) * sgn0(vj - c * sj);
        for (std::size_t s = 0; s < digit.size(); ++s) {
            if (++digit[s] < p) break;
            digit[s] = 0;
        }
    }
    return -0.5 * acc / static_cast<double>(total);
}

// E[objective of the rounded assignment] for the one-step soft-spin
// pipeline, enumerating both the {-1/2,+1/2}^N initializations and all 2^N
// rounding outcomes with their probabilities.
inline double brute_expected_objective(const loctensor::Instance& inst, double c0) {
    using loctensor::Instance;
    const int n = inst.n_spins;
    const std::uint64_t configs = std::uint64_t{1} << n;
    double total = 0.0;
    std::vector<double> v(static_cast<std::size_t>(n)), f(static_cast<std::size_t>(n));
    std::vector<double> p_plus(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < configs; ++mask) {
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? 0.5 : -0.5;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (const loctensor::Term& t : inst.terms) {
                bool has = false;
                double prod = t.coeff;
                for (int j : t.idx) {
                    if (j == i) has = true;
                    else prod *= v[static_cast<std::size_t>(j)];
                }
                if (has) acc += prod;
            }
            f[static_cast<std::size_t>(i)] = acc;
        }
        for (int i = 0; i < n; ++i) {
            const double x = v[static_cast<std::size_t>(i)] + c0 * f[static_cast<std::size_t>(i)];
            p_plus[static_cast<std::size_t>(i)] = x >= 1.0 ? 1.0 : (x <= -1.0 ? 0.0 : 0.5 * (1.0 + x));
        }
        double e_obj = 0.0;
        for (std::uint64_t zmask = 0; zmask < configs; ++zmask) {
            double prob = 1.0;
            for (int i = 0; i < n; ++i)
                prob *= (zmask >> i & 1u) ? p_plus[static_cast<std::size_t>(i)]
                                          : 1.0 - p_plus[static_cast<std::size_t>(i)];
            if (prob == 0.0) continue;
            double obj = 0.0;
            for (const loctensor::Term& t : inst.terms) {
                double prod = t.coeff;
                for (int j : t.idx) prod *= (zmask >> j & 1u) ? 1.0 : -1.0;
                obj += prod;
            }
            e_obj += prob * obj;
        }
        total += e_obj;
    }
    return total / static_cast<double>(configs);
}

// sum_{l,m,o} J(i,l,m) J(j,m,o) J(k,o,l) by direct triple summation over a
// dense symmetric tensor
inline double brute_triple_sum(const loctensor::Instance& inst, int i, int j, int k) {
    const int n = inst.n_spins;
    std::map<std::vector<int>, double> dense;
    for (const loctensor::Term& t : inst.terms) {
        const int a = t.idx[0], b = t.idx[1], c = t.idx[2];
        const int perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
        for (const auto& p : perms) dense[{p[0], p[1], p[2]}] = t.coeff;
    }
    auto at = [&](int x, int y, int z) {
        const auto it = dense.find({x, y, z});
        return it == dense.end() ? 0.0 : it->second;
    };
    double acc = 0.0;
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
            for (int o = 0; o < n; ++o) acc += at(i, l, m) * at(j, m, o) * at(k, o, l);
    return acc;
}

} // namespace oracles
