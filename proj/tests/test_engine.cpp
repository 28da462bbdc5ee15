#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "loctensor/engine.hpp"
#include "loctensor/instance.hpp"
#include "loctensor/rng.hpp"
#include "loctensor/serialize.hpp"
#include "loctensor/triangle_free.hpp"

using namespace loctensor;

namespace {

Instance single_edge_plus() {
    Instance inst;
    inst.k = 2;
    inst.n_spins = 2;
    inst.terms.push_back({{0, 1}, 1.0});
    return inst;
}

Instance single_edge_maxcut() {
    Graph g;
    g.n_vertices = 2;
    g.edges = {{0, 1}};
    return maxcut_as_max2lin2(g);
}

// random K-subsets with distinct spins; degree-regularity not needed here
Instance random_instance(int n, int k, int n_terms, std::uint64_t seed) {
    rng::Stream st = rng::substream(seed, 0, 3, 0);
    Instance inst;
    inst.k = k;
    inst.n_spins = n;
    std::set<std::vector<int>> seen;
    while (static_cast<int>(inst.terms.size()) < n_terms) {
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < k)
            pick.insert(static_cast<int>(st.below(static_cast<std::uint64_t>(n))));
        std::vector<int> idx(pick.begin(), pick.end());
        if (!seen.insert(idx).second) continue;
        inst.terms.push_back({idx, static_cast<double>(st.sign())});
    }
    return inst;
}

} // namespace

TEST_CASE("force: K=2 single edge is the coupling matrix times v") {
    const Instance inst = single_edge_plus();
    const std::vector<double> v{0.5, -0.5};
    const std::vector<double> f = compute_force(inst, v);
    CHECK(f[0] == -0.5);
    CHECK(f[1] == 0.5);
}

TEST_CASE("force: K=3 single term") {
    Instance inst;
    inst.k = 3;
    inst.n_spins = 3;
    inst.terms.push_back({{0, 1, 2}, 1.0});
    const std::vector<double> v{0.3, 1.0, 1.0};
    CHECK(compute_force(inst, v)[0] == 1.0);
}

TEST_CASE("force equals the +-1 substitution difference on random instances") {
    int cases = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        rng::Stream st = rng::substream(seed, 1, 4, 0);
        const int k = std::array{2, 3, 5}[st.below(3)];
        const int n = k + 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(8 - k)));
        const int n_terms = 1 + static_cast<int>(st.below(5));
        const Instance inst = random_instance(n, k, n_terms, seed);
        std::vector<double> v(static_cast<std::size_t>(n));
        static constexpr double grid[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
        for (auto& x : v) x = grid[st.below(5)];
        const std::vector<double> a = compute_force(inst, v);
        const std::vector<double> b = compute_force_reference(inst, v);
        for (int i = 0; i < n; ++i)
            CHECK(a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]);
        ++cases;
    }
    CHECK(cases == 100);
}

TEST_CASE("force is homogeneous of degree K-1") {
    for (int k : {2, 3, 5}) {
        const Instance inst = random_instance(7, k, 4, static_cast<std::uint64_t>(17 + k));
        std::vector<double> v(7);
        rng::Stream st = rng::substream(5, 0, 5, static_cast<std::uint64_t>(k));
        for (auto& x : v) x = st.uniform(-1.0, 1.0);
        const double alpha = 0.5;
        std::vector<double> av = v;
        for (auto& x : av) x *= alpha;
        const std::vector<double> f = compute_force(inst, v);
        const std::vector<double> fa = compute_force(inst, av);
        const double scale = std::pow(alpha, k - 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(fa[i] == doctest::Approx(scale * f[i]).epsilon(1e-12));
    }
}

TEST_CASE("apply_step: c=0 with identity leaves the state unchanged") {
    const Instance inst = single_edge_plus();
    StateVector v;
    v.values = {0.25, -0.75};
    const StateVector out = apply_step(inst, v, 0.0, Nonlinearity{}, {1, 0});
    CHECK(out.values == v.values);
    CHECK(out.step == 1);
}

TEST_CASE("apply_step: threshold flip law on a regular graph") {
    const Graph g = gen_bipartite_regular_graph(5, 3, 2);
    const Instance inst = maxcut_as_max2lin2(g);
    const double c = 0.6;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n_vertices));
    for (auto [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        StateVector v = sample_init(InitKind::PlusMinusOne, g.n_vertices, {7, trial});
        const StateVector out = apply_step(inst, v, c, Nonlinearity{}, {7, trial});
        for (int i = 0; i < g.n_vertices; ++i) {
            int agree = 0;
            for (int j : adj[static_cast<std::size_t>(i)])
                if (v.values[static_cast<std::size_t>(j)] == v.values[static_cast<std::size_t>(i)])
                    ++agree;
            const bool flips = c * (2.0 * agree - g.degree) > 1.0;
            const double expected =
                flips ? -v.values[static_cast<std::size_t>(i)] : v.values[static_cast<std::size_t>(i)];
            CHECK(std::signbit(out.values[static_cast<std::size_t>(i)]) == std::signbit(expected));
        }
    }
}

TEST_CASE("apply_step: clamp keeps values in [-1, 1]") {
    const Instance inst = single_edge_plus();
    StateVector v;
    v.values = {1.0, 1.0};
    Nonlinearity g;
    g.kind = GKind::Clamp;
    const StateVector out = apply_step(inst, v, 5.0, g, {1, 0});
    for (double x : out.values) {
        CHECK(x <= 1.0);
        CHECK(x >= -1.0);
    }
}

TEST_CASE("round: sign rule") {
    StateVector v;
    v.values = {1.0, -1.0, 0.2};
    const SpinAssignment z = round_spins(v, RoundingRule::Sign, {3, 0});
    CHECK(z == SpinAssignment{1, -1, 1});
}

TEST_CASE("round: sign of exact zero is a fair coin") {
    StateVector v;
    v.values = {0.0};
    int plus = 0;
    const int n = 100000;
    for (int t = 0; t < n; ++t)
        if (round_spins(v, RoundingRule::Sign, {4, static_cast<std::uint64_t>(t)})[0] == 1) ++plus;
    const double mean = static_cast<double>(plus) / n;
    CHECK(std::abs(mean - 0.5) < 4.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("round: soft spin matches its target expectation") {
    StateVector v;
    v.values = {0.5};
    double sum = 0.0;
    const int n = 1000000;
    for (int t = 0; t < n; ++t)
        sum += round_spins(v, RoundingRule::SoftSpin, {5, static_cast<std::uint64_t>(t)})[0];
    CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("round: soft spin saturates out of range") {
    StateVector v;
    v.values = {1.3, -2.0};
    for (std::uint64_t t = 0; t < 50; ++t) {
        const SpinAssignment z = round_spins(v, RoundingRule::SoftSpin, {6, t});
        CHECK(z[0] == 1);
        CHECK(z[1] == -1);
    }
}

TEST_CASE("soft spin empirical means sit in the binomial confidence band") {
    StateVector v;
    v.values = {-0.8, -0.2, 0.0, 0.3, 0.9};
    const int n = 100000;
    std::vector<double> sums(v.values.size(), 0.0);
    for (int t = 0; t < n; ++t) {
        const SpinAssignment z = round_spins(v, RoundingRule::SoftSpin, {8, static_cast<std::uint64_t>(t)});
        for (std::size_t i = 0; i < z.size(); ++i) sums[i] += z[i];
    }
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        const double p = 0.5 * (1.0 + v.values[i]);
        const double sigma = 2.0 * std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(sums[i] / n - v.values[i]) < 4.0 * sigma);
    }
}

TEST_CASE("zero-step schedule with sign rounding is a uniform assignment") {
    const Instance inst = random_instance(8, 2, 6, 21);
    const int n_trials = 4000;
    std::vector<double> sums(8, 0.0);
    for (int t = 0; t < n_trials; ++t) {
        const RunResult r = run_local_tensor(inst, InitKind::PlusMinusOne, {}, RoundingRule::Sign,
                                             42, static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < r.z.size(); ++i) sums[i] += r.z[i];
    }
    for (double s : sums)
        CHECK(std::abs(s / n_trials) < 4.0 / std::sqrt(static_cast<double>(n_trials)));
}

TEST_CASE("one step with c=1 anti-correlates a single edge") {
    const Instance inst = single_edge_maxcut();
    const UpdateSchedule schedule{Step{1.0, Nonlinearity{}}};
    for (std::uint64_t t = 0; t < 500; ++t) {
        const RunResult r = run_local_tensor(inst, InitKind::ContinuousUniform, schedule,
                                             RoundingRule::Sign, 31, t);
        CHECK(r.z[0] == -r.z[1]);
        CHECK(r.objective == 1.0);
    }
}

TEST_CASE("threshold schedule on the 4-cycle matches the exact formula") {
    const Graph g = gen_bipartite_regular_graph(2, 2, 1);
    const Instance inst = maxcut_as_max2lin2(g);
    const UpdateSchedule schedule{Step{0.6, Nonlinearity{}}};
    const TrialStats stats =
        run_trials(inst, InitKind::PlusMinusOne, schedule, RoundingRule::Sign, 77, 40000);
    // per-edge improvement = E[obj] / (2 Ne)
    const double exact = tf::expected_improvement(tf::threshold_rule(2, 2));
    const double improvement = stats.mean / (2.0 * static_cast<double>(g.edges.size()));
    const double tol = 4.0 * stats.stderr_ / (2.0 * static_cast<double>(g.edges.size()));
    CHECK(std::abs(improvement - exact) < tol);
}

TEST_CASE("pipeline is deterministic in the seed") {
    const Instance inst = random_instance(10, 3, 8, 5);
    const UpdateSchedule schedule{Step{0.3, Nonlinearity{}}, Step{0.1, Nonlinearity{GKind::Clamp}}};
    const RunResult a = run_local_tensor(inst, InitKind::FourPoint, schedule, RoundingRule::SoftSpin, 13, 2);
    const RunResult b = run_local_tensor(inst, InitKind::FourPoint, schedule, RoundingRule::SoftSpin, 13, 2);
    CHECK(a.z == b.z);
    CHECK(a.objective == b.objective);
    const TrialStats s1 = run_trials(inst, InitKind::FourPoint, schedule, RoundingRule::SoftSpin, 13, 300);
    const TrialStats s2 = run_trials(inst, InitKind::FourPoint, schedule, RoundingRule::SoftSpin, 13, 300);
    CHECK(s1.mean == s2.mean);
    CHECK(s1.stderr_ == s2.stderr_);
}

TEST_CASE("sign-noise nonlinearity follows its probability table") {
    Instance inst = single_edge_plus();
    StateVector v;
    v.values = {0.4, -0.4};
    Nonlinearity g;
    g.kind = GKind::SignWithBiasedNoise;
    g.p_plus_pos = 0.9;
    g.p_plus_neg = 0.2;
    const int n = 50000;
    double plus_pos = 0.0, plus_neg = 0.0;
    for (int t = 0; t < n; ++t) {
        const StateVector out = apply_step(inst, v, 0.0, g, {55, static_cast<std::uint64_t>(t)});
        if (out.values[0] == 1.0) plus_pos += 1.0;
        if (out.values[1] == 1.0) plus_neg += 1.0;
        CHECK(std::abs(out.values[0]) == 1.0);
    }
    CHECK(std::abs(plus_pos / n - 0.9) < 0.01);
    CHECK(std::abs(plus_neg / n - 0.2) < 0.01);
}

TEST_CASE("annealing: states stay in {-1,+1}^N after every step") {
    const Instance inst = random_instance(12, 3, 10, 33);
    std::vector<SpinAssignment> trace;
    const RunResult r = run_annealing(inst, std::vector<double>(15, 1.0), 0.7, 3, 0, &trace);
    CHECK(trace.size() == 15);
    for (const SpinAssignment& z : trace)
        for (auto s : z) CHECK((s == 1 || s == -1));
    for (auto s : r.z) CHECK((s == 1 || s == -1));
}

TEST_CASE("annealing: infinite temperature keeps marginals uniform") {
    const Instance inst = random_instance(6, 2, 5, 44);
    const double inf = std::numeric_limits<double>::infinity();
    const int n_trials = 4000;
    std::vector<double> sums(6, 0.0);
    for (int t = 0; t < n_trials; ++t) {
        const RunResult r =
            run_annealing(inst, std::vector<double>(8, inf), 1.0, 9, static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < r.z.size(); ++i) sums[i] += r.z[i];
    }
    for (double s : sums)
        CHECK(std::abs(s / n_trials) < 4.0 / std::sqrt(static_cast<double>(n_trials)));
}

TEST_CASE("annealing: two spins at low temperature reach the maximum") {
    const Instance inst = single_edge_plus(); // objective Z0 Z1, max = +1
    int hits = 0;
    const int n_trials = 300;
    for (int t = 0; t < n_trials; ++t) {
        const RunResult r = run_annealing(inst, std::vector<double>(60, 0.1), 0.5, 17,
                                          static_cast<std::uint64_t>(t));
        if (r.objective == 1.0) ++hits;
    }
    CHECK(static_cast<double>(hits) / n_trials >= 0.99);
}

TEST_CASE("annealing: one-step flip frequency matches the heat-bath table") {
    const Instance inst = single_edge_plus();
    StateVector v;
    v.values = {1.0, 1.0}; // F_0 = +1 toward agreement
    Nonlinearity g;
    g.kind = GKind::AnnealStep;
    g.temperature = 1.5;
    g.flip_rate = 0.4;
    const double c = 0.5 / (1.0 + force_bound(inst));
    const double expected = anneal_flip_probability(1, 1.0, 1.5, 0.4);
    CHECK(expected == doctest::Approx(0.4 / (1.0 + std::exp(2.0 / 1.5))).epsilon(1e-12));
    const int n = 200000;
    int flips = 0;
    for (int t = 0; t < n; ++t) {
        const StateVector out = apply_step(inst, v, c, g, {23, static_cast<std::uint64_t>(t)});
        if (out.values[0] == -1.0) ++flips;
    }
    const double freq = static_cast<double>(flips) / n;
    const double sigma = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(freq - expected) < 4.0 * sigma);
}

TEST_CASE("annealing rejects non-positive temperatures") {
    const Instance inst = single_edge_plus();
    CHECK_THROWS_AS(run_annealing(inst, {1.0, 0.0}, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_annealing(inst, {1.0}, 0.0, 1), std::invalid_argument);
}

TEST_CASE("run spec JSON round-trip") {
    io::RunSpec spec;
    spec.init = InitKind::FourPoint;
    spec.rounding = RoundingRule::SoftSpin;
    spec.expected_k = 2;
    Step s1{0.6, Nonlinearity{}};
    Step s2{0.1, Nonlinearity{}};
    s2.g.kind = GKind::AnnealStep;
    s2.g.temperature = 0.5;
    s2.g.flip_rate = 0.25;
    spec.schedule = {s1, s2};
    const io::RunSpec back = io::run_spec_from_json(io::to_json(spec));
    CHECK(back.init == spec.init);
    CHECK(back.rounding == spec.rounding);
    CHECK(back.expected_k == 2);
    REQUIRE(back.schedule.size() == 2);
    CHECK(back.schedule[0].c == 0.6);
    CHECK(back.schedule[1].g.kind == GKind::AnnealStep);
    CHECK(back.schedule[1].g.temperature == 0.5);
    CHECK(back.schedule[1].g.flip_rate == 0.25);
}
