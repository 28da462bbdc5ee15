#include "loctensor/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "loctensor/kernels.hpp"
#include "loctensor/rng.hpp"

namespace loctensor {

namespace {

// randomness phases within a trial: 0 = init, 1..S = steps, S+1 = rounding
constexpr std::uint64_t kPhaseInit = 0;

// flat spin -> incident-term index, built once per batch of evaluations
struct TermIndex {
    explicit TermIndex(const Instance& inst)
        : offsets(static_cast<std::size_t>(inst.n_spins) + 1, 0) {
        for (const Term& t : inst.terms)
            for (int i : t.idx) ++offsets[static_cast<std::size_t>(i) + 1];
        for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
        term_ids.resize(static_cast<std::size_t>(offsets.back()));
        std::vector<std::int32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::size_t t = 0; t < inst.terms.size(); ++t)
            for (int i : inst.terms[t].idx)
                term_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] =
                    static_cast<std::int32_t>(t);
    }
    std::vector<std::int32_t> offsets;
    std::vector<std::int32_t> term_ids;
};

void force_into(const Instance& inst, const TermIndex& index, std::span<const double> v,
                std::vector<double>& out) {
    out.resize(v.size());
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) if (inst.n_spins > 4096)
#endif
    for (int i = 0; i < inst.n_spins; ++i) {
        double f = 0.0;
        for (std::int32_t slot = index.offsets[static_cast<std::size_t>(i)];
             slot < index.offsets[static_cast<std::size_t>(i) + 1]; ++slot) {
            const Term& term = inst.terms[static_cast<std::size_t>(index.term_ids[
                static_cast<std::size_t>(slot)])];
            double prod = term.coeff;
            for (int j : term.idx)
                if (j != i) prod *= v[static_cast<std::size_t>(j)];
            f += prod;
        }
        out[static_cast<std::size_t>(i)] = f;
    }
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double apply_g(double x, double c, const Nonlinearity& g, const RunContext& ctx,
               std::uint64_t phase, std::size_t site) {
    switch (g.kind) {
    case GKind::Identity:
        return x;
    case GKind::Clamp:
        return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x);
    case GKind::SignWithBiasedNoise: {
        rng::Stream st = rng::substream(ctx.seed, ctx.trial, phase, site);
        const int s = sign_of(x);
        const double p = s > 0 ? g.p_plus_pos : (s < 0 ? g.p_plus_neg : g.p_plus_zero);
        return st.bernoulli(p) ? 1.0 : -1.0;
    }
    case GKind::AnnealStep: {
        // recover the +-1 state and the force from x = s + c*f; needs c*|f| < 1
        const int s = sign_of(x);
        if (s == 0) throw std::logic_error("AnnealStep: ambiguous state, c too large");
        const double f = (x - s) / c;
        rng::Stream st = rng::substream(ctx.seed, ctx.trial, phase, site);
        const double p_flip = anneal_flip_probability(s, f, g.temperature, g.flip_rate);
        return st.bernoulli(p_flip) ? -s : s;
    }
    }
    return x;
}

StateVector step_state(const Instance& inst, const TermIndex& index, const StateVector& v,
                       double c, const Nonlinearity& g, const RunContext& ctx,
                       std::vector<double>& force_buf) {
    force_into(inst, index, v.values, force_buf);
    StateVector out;
    out.values.resize(v.values.size());
    out.step = v.step + 1;
    const auto phase = static_cast<std::uint64_t>(v.step + 1);
    for (std::size_t i = 0; i < v.values.size(); ++i)
        out.values[i] = apply_g(v.values[i] + c * force_buf[i], c, g, ctx, phase, i);
    return out;
}

RunResult run_one(const Instance& inst, const TermIndex& index, InitKind init,
                  const UpdateSchedule& schedule, RoundingRule rule, const RunContext& ctx) {
    StateVector v = sample_init(init, inst.n_spins, ctx);
    std::vector<double> force_buf;
    for (const Step& step : schedule) {
        if (!std::isfinite(step.c)) throw std::invalid_argument("run_local_tensor: non-finite c");
        v = step_state(inst, index, v, step.c, step.g, ctx, force_buf);
    }
    RunResult res;
    res.z = round_spins(v, rule, ctx);
    res.objective = objective_value(inst, res.z);
    return res;
}

} // namespace

double objective_value(const Instance& inst, std::span<const double> v) {
    if (static_cast<int>(v.size()) != inst.n_spins)
        throw std::invalid_argument("objective_value: length mismatch");
    double obj = 0.0;
    for (const Term& t : inst.terms) {
        double prod = t.coeff;
        for (int i : t.idx) prod *= v[static_cast<std::size_t>(i)];
        obj += prod;
    }
    return obj;
}

double objective_value(const Instance& inst, const SpinAssignment& z) {
    std::vector<double> v(z.begin(), z.end());
    return objective_value(inst, v);
}

std::vector<double> compute_force(const Instance& inst, std::span<const double> v) {
    if (static_cast<int>(v.size()) != inst.n_spins)
        throw std::invalid_argument("compute_force: length mismatch");
    const TermIndex index(inst);
    std::vector<double> force;
    force_into(inst, index, v, force);
    return force;
}

std::vector<double> compute_force_reference(const Instance& inst, std::span<const double> v) {
    std::vector<double> work(v.begin(), v.end());
    std::vector<double> force(static_cast<std::size_t>(inst.n_spins), 0.0);
    for (int i = 0; i < inst.n_spins; ++i) {
        const double keep = work[static_cast<std::size_t>(i)];
        work[static_cast<std::size_t>(i)] = 1.0;
        const double up = objective_value(inst, work);
        work[static_cast<std::size_t>(i)] = -1.0;
        const double down = objective_value(inst, work);
        work[static_cast<std::size_t>(i)] = keep;
        force[static_cast<std::size_t>(i)] = 0.5 * (up - down);
    }
    return force;
}

StateVector sample_init(InitKind init, int n, const RunContext& ctx) {
    StateVector v;
    v.values.resize(static_cast<std::size_t>(n));
    v.step = 0;
    for (int i = 0; i < n; ++i) {
        rng::Stream st = rng::substream(ctx.seed, ctx.trial, kPhaseInit,
                                        static_cast<std::uint64_t>(i));
        double x = 0.0;
        switch (init) {
        case InitKind::PlusMinusOne: x = st.sign(); break;
        case InitKind::PlusMinusHalf: x = 0.5 * st.sign(); break;
        case InitKind::ContinuousUniform: x = st.uniform(-1.0, 1.0); break;
        case InitKind::FourPoint: {
            static constexpr double pts[4] = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
            x = pts[st.below(4)];
            break;
        }
        }
        v.values[static_cast<std::size_t>(i)] = x;
    }
    return v;
}

double anneal_flip_probability(int s, double force, double temperature, double flip_rate) {
    if (std::isinf(temperature)) return flip_rate * 0.5;
    // heat bath: P(new = +1) = 1 / (1 + exp(-2 f / T))
    const double p_flip_given_update = 1.0 / (1.0 + std::exp(2.0 * s * force / temperature));
    return flip_rate * p_flip_given_update;
}

StateVector apply_step(const Instance& inst, const StateVector& v, double c,
                       const Nonlinearity& g, const RunContext& ctx) {
    if (static_cast<int>(v.values.size()) != inst.n_spins)
        throw std::invalid_argument("apply_step: length mismatch");
    const TermIndex index(inst);
    std::vector<double> force_buf;
    return step_state(inst, index, v, c, g, ctx, force_buf);
}

SpinAssignment round_spins(const StateVector& v, RoundingRule rule, const RunContext& ctx) {
    SpinAssignment z(v.values.size(), 1);
    const auto phase = static_cast<std::uint64_t>(v.step + 1);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double x = v.values[i];
        if (!std::isfinite(x)) throw std::invalid_argument("round_spins: non-finite entry");
        switch (rule) {
        case RoundingRule::Sign: {
            if (x > 0.0) z[i] = 1;
            else if (x < 0.0) z[i] = -1;
            else {
                rng::Stream st = rng::substream(ctx.seed, ctx.trial, phase, i);
                z[i] = static_cast<std::int8_t>(st.sign());
            }
            break;
        }
        case RoundingRule::SoftSpin: {
            if (x >= 1.0) z[i] = 1;
            else if (x <= -1.0) z[i] = -1;
            else {
                rng::Stream st = rng::substream(ctx.seed, ctx.trial, phase, i);
                z[i] = st.bernoulli(0.5 * (1.0 + x)) ? 1 : -1;
            }
            break;
        }
        }
    }
    return z;
}

RunResult run_local_tensor(const Instance& inst, InitKind init, const UpdateSchedule& schedule,
                           RoundingRule rule, std::uint64_t seed, std::uint64_t trial) {
    const TermIndex index(inst);
    return run_one(inst, index, init, schedule, rule, {seed, trial});
}

TrialStats run_trials(const Instance& inst, InitKind init, const UpdateSchedule& schedule,
                      RoundingRule rule, std::uint64_t seed, std::uint64_t trials,
                      std::vector<double>* per_trial) {
    if (trials == 0) throw std::invalid_argument("run_trials: trials must be >= 1");
    const TermIndex index(inst);
    if (per_trial) per_trial->assign(trials, 0.0);
    auto one = [&](std::uint64_t t) {
        const double obj = run_one(inst, index, init, schedule, rule, {seed, t}).objective;
        if (per_trial) (*per_trial)[t] = obj;
        return obj;
    };
    const auto [s, s2] = kernels::chunked_sum2(trials, one, 256);
    TrialStats st;
    st.trials = trials;
    st.mean = s / static_cast<double>(trials);
    const double var = s2 / static_cast<double>(trials) - st.mean * st.mean;
    st.stderr_ = trials > 1 ? std::sqrt(std::max(0.0, var) / static_cast<double>(trials)) : 0.0;
    return st;
}

double force_bound(const Instance& inst) {
    std::vector<double> per_spin(static_cast<std::size_t>(inst.n_spins), 0.0);
    for (const Term& t : inst.terms)
        for (int i : t.idx) per_spin[static_cast<std::size_t>(i)] += std::abs(t.coeff);
    double mx = 0.0;
    for (double b : per_spin) mx = std::max(mx, b);
    return mx;
}

RunResult run_annealing(const Instance& inst, const std::vector<double>& temperatures,
                        double flip_rate, std::uint64_t seed, std::uint64_t trial,
                        std::vector<SpinAssignment>* trace) {
    for (double t : temperatures)
        if (!(t > 0.0)) throw std::invalid_argument("run_annealing: temperatures must be positive");
    if (!(flip_rate > 0.0 && flip_rate <= 1.0))
        throw std::invalid_argument("run_annealing: flip_rate must be in (0, 1]");

    const double c = 0.5 / (1.0 + force_bound(inst));
    const TermIndex index(inst);
    const RunContext ctx{seed, trial};
    StateVector v = sample_init(InitKind::PlusMinusOne, inst.n_spins, ctx);
    std::vector<double> force_buf;
    if (trace) trace->clear();
    for (double temp : temperatures) {
        Nonlinearity g;
        g.kind = GKind::AnnealStep;
        g.temperature = temp;
        g.flip_rate = flip_rate;
        v = step_state(inst, index, v, c, g, ctx, force_buf);
        if (trace) {
            SpinAssignment snap(v.values.size());
            for (std::size_t i = 0; i < v.values.size(); ++i)
                snap[i] = static_cast<std::int8_t>(v.values[i] > 0 ? 1 : -1);
            trace->push_back(std::move(snap));
        }
    }
    RunResult res;
    res.z = round_spins(v, RoundingRule::Sign, ctx);
    res.objective = objective_value(inst, res.z);
    return res;
}

} // namespace loctensor
