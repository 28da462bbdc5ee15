#include "loctensor/triangle_free.hpp"

#include <cmath>
#include <stdexcept>

#include "loctensor/kernels.hpp"
#include "loctensor/rng.hpp"

namespace loctensor::tf {

std::vector<double> agree_count_weights(int d) {
    if (d < 1) throw std::invalid_argument("agree_count_weights: d must be >= 1");
    const int m = d - 1;
    std::vector<double> w(static_cast<std::size_t>(m) + 1, 0.0);
    if (m <= 1020) {
        w[0] = std::exp2(static_cast<double>(-m));
        for (int n = 0; n < m; ++n)
            w[static_cast<std::size_t>(n) + 1] =
                w[static_cast<std::size_t>(n)] * static_cast<double>(m - n) /
                static_cast<double>(n + 1);
    } else {
        // seed at the mode to stay inside the representable range; far tails
        // underflow to zero, which is below any tolerance used downstream
        const int n0 = m / 2;
        const double lw0 = -static_cast<double>(m) * std::log(2.0) + std::lgamma(m + 1.0) -
                           std::lgamma(n0 + 1.0) - std::lgamma(m - n0 + 1.0);
        w[static_cast<std::size_t>(n0)] = std::exp(lw0);
        for (int n = n0; n < m; ++n)
            w[static_cast<std::size_t>(n) + 1] =
                w[static_cast<std::size_t>(n)] * static_cast<double>(m - n) /
                static_cast<double>(n + 1);
        for (int n = n0; n > 0; --n)
            w[static_cast<std::size_t>(n) - 1] =
                w[static_cast<std::size_t>(n)] * static_cast<double>(n) /
                static_cast<double>(m - n + 1);
    }
    return w;
}

double expected_improvement(const FlipRule& rule) {
    const int d = rule.d;
    if (d < 1 || static_cast<int>(rule.q.size()) != d + 1)
        throw std::invalid_argument("expected_improvement: rule has wrong shape");
    for (double qm : rule.q)
        if (!(qm >= -1.0 && qm <= 1.0))
            throw std::invalid_argument("expected_improvement: q entries must be in [-1,1]");
    const std::vector<double> w = agree_count_weights(d);
    double stay = 0.0, cross = 0.0;
    for (int n = 0; n < d; ++n) {
        stay += w[static_cast<std::size_t>(n)] * rule.q[static_cast<std::size_t>(n)];
        cross += w[static_cast<std::size_t>(n)] * rule.q[static_cast<std::size_t>(n) + 1];
    }
    return 0.25 * (stay * stay - cross * cross);
}

FlipRule threshold_rule(int d, int tau) {
    if (d < 1) throw std::invalid_argument("threshold_rule: d must be >= 1");
    if (tau < 0 || tau > d + 1)
        throw std::invalid_argument("threshold_rule: tau must be in [0, d+1]");
    FlipRule rule;
    rule.d = d;
    rule.q.resize(static_cast<std::size_t>(d) + 1);
    for (int m = 0; m <= d; ++m)
        rule.q[static_cast<std::size_t>(m)] = m < tau ? 1.0 : -1.0;
    return rule;
}

ThresholdOptimum optimize_threshold(int d) {
    ThresholdOptimum best{0, -1.0};
    for (int tau = 0; tau <= d + 1; ++tau) {
        const double val = expected_improvement(threshold_rule(d, tau));
        if (val > best.improvement) best = {tau, val};
    }
    return best;
}

SoftThresholdOptimum optimize_soft_threshold(int d, double grid_step) {
    if (!(grid_step > 0.0))
        throw std::invalid_argument("optimize_soft_threshold: grid_step must be > 0");
    const int n_grid = static_cast<int>(std::round(2.0 / grid_step));
    SoftThresholdOptimum best;
    best.improvement = -1.0;
    for (int m0 = 0; m0 <= d; ++m0) {
        FlipRule rule;
        rule.d = d;
        rule.q.resize(static_cast<std::size_t>(d) + 1);
        for (int m = 0; m <= d; ++m)
            rule.q[static_cast<std::size_t>(m)] = m < m0 ? 1.0 : -1.0;
        for (int k = 0; k <= n_grid; ++k) {
            const double s = k == n_grid ? 1.0 : -1.0 + grid_step * k;
            rule.q[static_cast<std::size_t>(m0)] = s;
            const double val = expected_improvement(rule);
            if (val > best.improvement) {
                best.rule = rule;
                best.boundary = m0;
                best.boundary_value = s;
                best.improvement = val;
            }
        }
    }
    return best;
}

double qaoa_one_step(int d) {
    if (d < 1) throw std::invalid_argument("qaoa_one_step: d must be >= 1");
    const double dd = static_cast<double>(d);
    return 0.5 / std::sqrt(dd) * std::pow(1.0 - 1.0 / dd, 0.5 * (dd - 1.0));
}

FlipRule d11_soft_rule() {
    FlipRule rule = threshold_rule(11, 8);
    rule.q[7] = -0.1;
    return rule;
}

FlipRule d6_soft_rule() {
    FlipRule rule = threshold_rule(6, 5);
    rule.q[4] = 0.3;
    return rule;
}

const char* d6_soft_rule_reading() {
    return "boundary at m=4 with q(4)=+0.3, i.e. flip probability 0.35 when exactly 4 of 6 "
           "neighbors agree (stay probability 0.65); no flip for m<=3, flip for m>=5";
}

double c_for_tau(int d, int tau) {
    if (tau < 0 || tau > d + 1) throw std::invalid_argument("c_for_tau: tau out of range");
    if (tau == d + 1) return 1.0 / (2.0 * d + 2.0); // never flips
    const int lo = 2 * tau - d; // need c*lo > 1
    if (lo <= 0)
        throw std::invalid_argument("c_for_tau: threshold not realizable with positive c");
    const int hi = 2 * (tau - 1) - d; // need c*hi < 1
    // midpoints below never put 1 - c*(2m - d) exactly at zero for integer m
    if (hi > 0) return 1.0 / (tau + tau - d - 1.0);
    return 2.0 / static_cast<double>(lo);
}

namespace {

struct SupportGrid {
    std::vector<int> units; // init values are units[r] / scale
    int scale = 1;
};

SupportGrid support_grid(InitKind init) {
    switch (init) {
    case InitKind::PlusMinusOne: return {{-1, 1}, 1};
    case InitKind::PlusMinusHalf: return {{-1, 1}, 2};
    case InitKind::FourPoint: return {{-3, -1, 1, 3}, 3};
    case InitKind::ContinuousUniform:
        throw std::invalid_argument("enumerate_local_subgraph: init must have finite support");
    }
    throw std::logic_error("support_grid: unreachable");
}

// E[sign] with an exact zero counting as 0 (fair coin)
double sgn0(double x) {
    constexpr double kZeroTol = 1e-12;
    if (x > kZeroTol) return 1.0;
    if (x < -kZeroTol) return -1.0;
    return 0.0;
}

// distribution of the sum of n i.i.d. draws from the unit grid,
// as probabilities indexed by (sum + n*umax)
std::vector<double> sum_distribution(const SupportGrid& grid, int n) {
    const int umax = grid.units.back();
    const int span = 2 * n * umax + 1;
    std::vector<double> dist(1, 1.0); // n = 0
    int offset = 0;
    const double p = 1.0 / static_cast<double>(grid.units.size());
    for (int step = 0; step < n; ++step) {
        std::vector<double> next(dist.size() + static_cast<std::size_t>(2 * umax), 0.0);
        for (std::size_t s = 0; s < dist.size(); ++s) {
            if (dist[s] == 0.0) continue;
            for (int u : grid.units)
                next[s + static_cast<std::size_t>(u + umax)] += dist[s] * p;
        }
        dist = std::move(next);
        offset += umax;
    }
    if (static_cast<int>(dist.size()) != span && n > 0)
        throw std::logic_error("sum_distribution: bad span");
    return dist;
}

} // namespace

double enumerate_local_subgraph(int d, InitKind init, double c) {
    if (d < 1) throw std::invalid_argument("enumerate_local_subgraph: d must be >= 1");
    const SupportGrid grid = support_grid(init);
    const int umax = grid.units.back();
    const int n_other = d - 1;
    const std::vector<double> dist = sum_distribution(grid, n_other);
    const int offset = n_other * umax;

    const double p = 1.0 / static_cast<double>(grid.units.size());
    // e(u_i, u_j) = E over the private neighbor sum of sign(u_i - c*(u_j + U))
    auto side_expectation = [&](int ui, int uj) {
        double e = 0.0;
        for (std::size_t s = 0; s < dist.size(); ++s) {
            if (dist[s] == 0.0) continue;
            const int u_sum = static_cast<int>(s) - offset;
            e += dist[s] * sgn0(static_cast<double>(ui) - c * static_cast<double>(uj + u_sum));
        }
        return e;
    };

    double corr = 0.0; // E[Z_i Z_j]
    for (int ui : grid.units)
        for (int uj : grid.units)
            corr += p * p * side_expectation(ui, uj) * side_expectation(uj, ui);
    return -0.5 * corr;
}

namespace {

double mc_sample_value(int d, InitKind init, double c, std::uint64_t seed, std::uint64_t s) {
    rng::Stream st = rng::substream(seed, s, 0, 0);
    auto draw = [&]() -> double {
        switch (init) {
        case InitKind::PlusMinusOne: return st.sign();
        case InitKind::PlusMinusHalf: return 0.5 * st.sign();
        case InitKind::ContinuousUniform: return st.uniform(-1.0, 1.0);
        case InitKind::FourPoint: {
            static constexpr double pts[4] = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
            return pts[st.below(4)];
        }
        }
        return 0.0;
    };
    const double vi = draw();
    const double vj = draw();
    double sum_i = 0.0, sum_j = 0.0;
    for (int r = 0; r < d - 1; ++r) sum_i += draw();
    for (int r = 0; r < d - 1; ++r) sum_j += draw();
    const double xi = vi - c * (vj + sum_i);
    const double xj = vj - c * (vi + sum_j);
    const double zi = xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : st.sign());
    const double zj = xj > 0.0 ? 1.0 : (xj < 0.0 ? -1.0 : st.sign());
    return -0.5 * zi * zj;
}

McEstimate finish_estimate(double sum, double sum2, std::uint64_t samples) {
    McEstimate est;
    est.samples = samples;
    est.value = sum / static_cast<double>(samples);
    const double var = sum2 / static_cast<double>(samples) - est.value * est.value;
    est.stderr_ = samples > 1 ? std::sqrt(std::max(0.0, var) / static_cast<double>(samples)) : 0.0;
    return est;
}

} // namespace

McEstimate mc_local_subgraph(int d, InitKind init, double c, std::uint64_t samples,
                             std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("mc_local_subgraph: samples must be >= 1");
    const auto [s, s2] = kernels::chunked_sum2(
        samples, [&](std::uint64_t i) { return mc_sample_value(d, init, c, seed, i); });
    return finish_estimate(s, s2, samples);
}

McEstimate mc_local_subgraph_reference(int d, InitKind init, double c, std::uint64_t samples,
                                       std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("mc_local_subgraph: samples must be >= 1");
    const auto [s, s2] = kernels::sum2_serial(
        samples, [&](std::uint64_t i) { return mc_sample_value(d, init, c, seed, i); });
    return finish_estimate(s, s2, samples);
}

std::vector<ScanRow> scaling_scan(int d_min, int d_max) {
    if (d_min < 1 || d_min > d_max)
        throw std::invalid_argument("scaling_scan: need 1 <= d_min <= d_max");
    std::vector<ScanRow> rows(static_cast<std::size_t>(d_max - d_min) + 1);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int d = d_min; d <= d_max; ++d) {
        const ThresholdOptimum opt = optimize_threshold(d);
        const double qaoa = qaoa_one_step(d);
        const double rd = std::sqrt(static_cast<double>(d));
        rows[static_cast<std::size_t>(d - d_min)] =
            ScanRow{d, opt.tau, opt.improvement, rd * opt.improvement, qaoa, rd * qaoa};
    }
    return rows;
}

std::vector<int> qaoa_wins(const std::vector<ScanRow>& rows) {
    std::vector<int> out;
    for (const ScanRow& r : rows)
        if (r.thr_improvement < r.qaoa_improvement) out.push_back(r.d);
    return out;
}

} // namespace loctensor::tf
