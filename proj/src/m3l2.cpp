#include "loctensor/m3l2.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "loctensor/kernels.hpp"
#include "loctensor/rng.hpp"

namespace loctensor::m3l2 {

namespace {

constexpr int kExhaustiveCap = 24;

void require_k3(const Instance& inst, const char* who) {
    if (inst.k != 3) throw std::invalid_argument(std::string(who) + ": instance arity must be 3");
}

struct SpinTerms {
    explicit SpinTerms(const Instance& inst) : by_spin(static_cast<std::size_t>(inst.n_spins)) {
        for (std::size_t t = 0; t < inst.terms.size(); ++t)
            for (int i : inst.terms[t].idx)
                by_spin[static_cast<std::size_t>(i)].push_back(t);
    }
    std::vector<std::vector<std::size_t>> by_spin;
};

void force_into(const Instance& inst, const SpinTerms& index, const std::vector<double>& v,
                std::vector<double>& f) {
    for (int i = 0; i < inst.n_spins; ++i) {
        double acc = 0.0;
        for (std::size_t t : index.by_spin[static_cast<std::size_t>(i)]) {
            const Term& term = inst.terms[t];
            double prod = term.coeff;
            for (int j : term.idx)
                if (j != i) prod *= v[static_cast<std::size_t>(j)];
            acc += prod;
        }
        f[static_cast<std::size_t>(i)] = acc;
    }
}

} // namespace

double linear_term(const Instance& inst, double c0) {
    require_k3(inst, "linear_term");
    double sum_sq = 0.0;
    for (const Term& t : inst.terms) sum_sq += t.coeff * t.coeff;
    return 0.1875 * sum_sq * c0; // 3/16 = 3 positions * (E[v^2])^2 with E[v^2] = 1/4
}

double loop_sum(const Instance& inst) {
    require_k3(inst, "loop_sum");
    const int n = inst.n_spins;
    // symmetric sparse coupling: row(i) lists ordered pairs (l, m) with J(i,l,m) nonzero
    std::vector<std::vector<std::pair<std::pair<int, int>, double>>> row(
        static_cast<std::size_t>(n));
    std::map<std::pair<int, std::pair<int, int>>, double> lookup;
    for (const Term& t : inst.terms) {
        const int a = t.idx[0], b = t.idx[1], c = t.idx[2];
        const std::pair<int, int> pairs[3][2] = {
            {{b, c}, {c, b}}, {{a, c}, {c, a}}, {{a, b}, {b, a}}};
        const int firsts[3] = {a, b, c};
        for (int p = 0; p < 3; ++p)
            for (const auto& lm : pairs[p]) {
                row[static_cast<std::size_t>(firsts[p])].push_back({lm, t.coeff});
                lookup[{firsts[p], lm}] = t.coeff;
            }
    }
    double total = 0.0;
    for (const Term& t : inst.terms) {
        // all 6 orderings of the term as (i, j, k)
        const int v0 = t.idx[0], v1 = t.idx[1], v2 = t.idx[2];
        const int orders[6][3] = {{v0, v1, v2}, {v0, v2, v1}, {v1, v0, v2},
                                  {v1, v2, v0}, {v2, v0, v1}, {v2, v1, v0}};
        for (const auto& ord : orders) {
            const int i = ord[0], j = ord[1], k = ord[2];
            double acc = 0.0;
            for (const auto& [lm, jilm] : row[static_cast<std::size_t>(i)]) {
                const int l = lm.first, m = lm.second;
                for (const auto& [mo, jjmo] : row[static_cast<std::size_t>(j)]) {
                    if (mo.first != m) continue;
                    const int o = mo.second;
                    const auto it = lookup.find({k, {o, l}});
                    if (it != lookup.end()) acc += jilm * jjmo * it->second;
                }
            }
            total += t.coeff * acc;
        }
    }
    return total;
}

double expansion_coefficient_exhaustive(const Instance& inst, int order) {
    require_k3(inst, "expansion_coefficient_exhaustive");
    if (order < 1 || order > 3)
        throw std::invalid_argument("expansion_coefficient_exhaustive: order must be 1, 2, or 3");
    if (inst.n_spins > kExhaustiveCap)
        throw std::invalid_argument("expansion_coefficient_exhaustive: n_spins exceeds cap");
    const SpinTerms index(inst);
    const auto n_configs = std::uint64_t{1} << inst.n_spins;

    auto per_config = [&](std::uint64_t mask) {
        std::vector<double> v(static_cast<std::size_t>(inst.n_spins));
        std::vector<double> f(v.size());
        for (int i = 0; i < inst.n_spins; ++i)
            v[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? 0.5 : -0.5;
        force_into(inst, index, v, f);
        double acc = 0.0;
        for (const Term& t : inst.terms) {
            const double va = v[static_cast<std::size_t>(t.idx[0])];
            const double vb = v[static_cast<std::size_t>(t.idx[1])];
            const double vc = v[static_cast<std::size_t>(t.idx[2])];
            const double fa = f[static_cast<std::size_t>(t.idx[0])];
            const double fb = f[static_cast<std::size_t>(t.idx[1])];
            const double fc = f[static_cast<std::size_t>(t.idx[2])];
            switch (order) {
            case 1: acc += t.coeff * (fa * vb * vc + va * fb * vc + va * vb * fc); break;
            case 2: acc += t.coeff * (fa * fb * vc + fa * vb * fc + va * fb * fc); break;
            default: acc += t.coeff * (fa * fb * fc); break;
            }
        }
        return acc;
    };
    return kernels::chunked_sum(n_configs, per_config) / static_cast<double>(n_configs);
}

CubicTerm cubic_term(const Instance& inst, double c0) {
    require_k3(inst, "cubic_term");
    CubicTerm res;
    const double c3 = c0 * c0 * c0;
    res.loop_formula = c3 * kCubicLoopCoefficient * loop_sum(inst);
    if (inst.n_spins <= kExhaustiveCap) {
        res.oracle = c3 * expansion_coefficient_exhaustive(inst, 3);
        const double scale = std::max({1.0, std::abs(res.loop_formula), std::abs(*res.oracle)});
        res.agree = std::abs(res.loop_formula - *res.oracle) <= 1e-9 * scale;
    }
    return res;
}

double exact_expected_objective(const Instance& inst, double c0) {
    require_k3(inst, "exact_expected_objective");
    if (inst.n_spins > kExhaustiveCap)
        throw std::invalid_argument("exact_expected_objective: n_spins exceeds cap");
    const SpinTerms index(inst);
    const auto n_configs = std::uint64_t{1} << inst.n_spins;
    auto per_config = [&](std::uint64_t mask) {
        std::vector<double> v(static_cast<std::size_t>(inst.n_spins));
        std::vector<double> f(v.size());
        for (int i = 0; i < inst.n_spins; ++i)
            v[static_cast<std::size_t>(i)] = (mask >> i & 1u) ? 0.5 : -0.5;
        force_into(inst, index, v, f);
        // E[Z_i | v0] is v1_i clamped to [-1, 1]; spins are independent
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double x = v[i] + c0 * f[i];
            v[i] = x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x);
        }
        double obj = 0.0;
        for (const Term& t : inst.terms) {
            double prod = t.coeff;
            for (int j : t.idx) prod *= v[static_cast<std::size_t>(j)];
            obj += prod;
        }
        return obj;
    };
    return kernels::chunked_sum(n_configs, per_config) / static_cast<double>(n_configs);
}

TrialStats run(const Instance& inst, double c0, std::uint64_t trials, std::uint64_t seed) {
    UpdateSchedule schedule{Step{c0, Nonlinearity{}}};
    return run_trials(inst, InitKind::PlusMinusHalf, schedule, RoundingRule::SoftSpin, seed,
                      trials);
}

double clamp_fraction(const Instance& inst, double c0, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("clamp_fraction: trials must be >= 1");
    const SpinTerms index(inst);
    auto per_trial = [&](std::uint64_t t) {
        const RunContext ctx{seed, t};
        StateVector v0 = sample_init(InitKind::PlusMinusHalf, inst.n_spins, ctx);
        std::vector<double> f(v0.values.size());
        force_into(inst, index, v0.values, f);
        double count = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            if (std::abs(v0.values[i] + c0 * f[i]) > 1.0) count += 1.0;
        return count;
    };
    const double total = kernels::chunked_sum(trials, per_trial, 256);
    return total / (static_cast<double>(trials) * static_cast<double>(inst.n_spins));
}

ExpansionReport make_report(const Instance& inst, double c0, std::uint64_t trials,
                            std::uint64_t seed) {
    ExpansionReport rep;
    rep.c0 = c0;
    rep.linear_term = linear_term(inst, c0);
    const CubicTerm cubic = cubic_term(inst, c0);
    rep.cubic_loop = cubic.loop_formula;
    rep.cubic_oracle = cubic.oracle;
    rep.predicted_total = rep.linear_term + rep.cubic_loop;
    const TrialStats stats = run(inst, c0, trials, seed);
    rep.measured_mean = stats.mean;
    rep.measured_stderr = stats.stderr_;
    rep.trials = trials;
    rep.clamp_fraction = clamp_fraction(inst, c0, trials, seed);
    return rep;
}

std::vector<ScalingRow> scaling_experiment(const std::vector<int>& d_list,
                                           const std::vector<int>& n_list, double alpha,
                                           std::uint64_t trials, std::uint64_t seed, int k) {
    if (d_list.size() != n_list.size())
        throw std::invalid_argument("scaling_experiment: d_list and n_list sizes differ");
    std::vector<ScalingRow> rows;
    rows.reserve(d_list.size());
    for (std::size_t r = 0; r < d_list.size(); ++r) {
        const int d = d_list[r];
        const int n = n_list[r];
        const double c0 = alpha * std::pow(static_cast<double>(d), -0.75);
        const std::uint64_t inst_seed = rng::mix64(seed ^ (0x517cc1b727220a95ULL * (r + 1)));
        const Instance inst = gen_regular_klin2(n, d, k, inst_seed);
        const TrialStats stats = run(inst, c0, trials, seed);
        ScalingRow row;
        row.d = d;
        row.n = n;
        row.c0 = c0;
        row.mean = stats.mean;
        row.stderr_ = stats.stderr_;
        row.scaled_ratio = stats.mean / (std::pow(static_cast<double>(d), 0.25) * n);
        row.clamp_fraction = clamp_fraction(inst, c0, trials, seed);
        rows.push_back(row);
    }
    return rows;
}

} // namespace loctensor::m3l2
