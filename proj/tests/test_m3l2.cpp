#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "loctensor/m3l2.hpp"
#include "loctensor/rng.hpp"
#include "oracles.hpp"

using namespace loctensor;

namespace {

Instance single_term() {
    Instance inst;
    inst.k = 3;
    inst.n_spins = 3;
    inst.terms.push_back({{0, 1, 2}, 1.0});
    return inst;
}

Instance four_term_loop() {
    Instance inst;
    inst.k = 3;
    inst.n_spins = 6;
    inst.terms.push_back({{0, 1, 2}, 1.0});
    inst.terms.push_back({{0, 3, 4}, 1.0});
    inst.terms.push_back({{1, 4, 5}, -1.0});
    inst.terms.push_back({{2, 3, 5}, 1.0});
    return inst;
}

} // namespace

TEST_CASE("linear term equals the exhaustive-init coefficient exactly") {
    const Instance fixtures[] = {single_term(), four_term_loop(), gen_max3lin2(6, 3, 1),
                                 gen_max3lin2(8, 3, 2)};
    for (const Instance& inst : fixtures) {
        const double oracle = m3l2::expansion_coefficient_exhaustive(inst, 1);
        for (double c0 : {0.1, 0.25, 1.0})
            CHECK(m3l2::linear_term(inst, c0) == c0 * oracle);
    }
}

TEST_CASE("linear term closed form on a regular instance") {
    // D-regular with +-1 coefficients: c0 * D * N / 16
    const Instance inst = gen_max3lin2(6, 3, 1);
    CHECK(m3l2::linear_term(inst, 0.1) == doctest::Approx(0.1 * 3 * 6 / 16.0).epsilon(1e-15));
    CHECK(m3l2::linear_term(inst, 0.0) == 0.0);
    Instance k2;
    k2.k = 2;
    k2.n_spins = 2;
    k2.terms.push_back({{0, 1}, 1.0});
    CHECK_THROWS_AS(m3l2::linear_term(k2, 0.1), std::invalid_argument);
}

TEST_CASE("second-order coefficient vanishes") {
    const Instance fixtures[] = {single_term(), four_term_loop(), gen_max3lin2(6, 3, 3)};
    for (const Instance& inst : fixtures)
        CHECK(std::abs(m3l2::expansion_coefficient_exhaustive(inst, 2)) <= 1e-12);
}

TEST_CASE("cubic term: loop formula matches the exhaustive oracle") {
    SUBCASE("empty instance") {
        Instance empty;
        empty.k = 3;
        empty.n_spins = 4;
        const m3l2::CubicTerm cubic = m3l2::cubic_term(empty, 0.3);
        CHECK(cubic.loop_formula == 0.0);
        CHECK(*cubic.oracle == 0.0);
        CHECK(cubic.agree);
    }
    SUBCASE("every term closes a loop through its own couplings") {
        const m3l2::CubicTerm cubic = m3l2::cubic_term(single_term(), 1.0);
        CHECK(*cubic.oracle == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
        CHECK(cubic.agree);
    }
    SUBCASE("hand-built loop and random instances") {
        const Instance fixtures[] = {four_term_loop(), gen_max3lin2(6, 3, 1), gen_max3lin2(12, 3, 9)};
        for (const Instance& inst : fixtures) {
            const m3l2::CubicTerm cubic = m3l2::cubic_term(inst, 0.4);
            REQUIRE(cubic.oracle.has_value());
            CHECK(cubic.agree);
            CHECK(cubic.loop_formula == doctest::Approx(*cubic.oracle).epsilon(1e-12));
        }
    }
}

TEST_CASE("the calibrated loop coefficient is 1/384") {
    for (const Instance& inst : {single_term(), four_term_loop(), gen_max3lin2(9, 3, 4)}) {
        const double loops = m3l2::loop_sum(inst);
        if (loops == 0.0) continue;
        const double oracle = m3l2::expansion_coefficient_exhaustive(inst, 3);
        CHECK(oracle / loops == doctest::Approx(m3l2::kCubicLoopCoefficient).epsilon(1e-12));
    }
}

TEST_CASE("cubic term respects the spectral bound on random instances") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 100; ++seed) {
        const int n = 6 + 3 * static_cast<int>(seed % 4);
        Instance inst;
        try {
            inst = gen_max3lin2(n, 3, seed);
        } catch (const std::runtime_error&) {
            continue;
        }
        const double c0 = 0.2;
        const m3l2::CubicTerm cubic = m3l2::cubic_term(inst, c0);
        const double bound = (1.0 / 6.0) * (1.0 / 8.0) * 3.0 * n * std::pow(6.0, 1.5) *
                             c0 * c0 * c0;
        CHECK(std::abs(cubic.loop_formula) <= bound + 1e-12);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("sampled mean is unbiased at c0 = 0") {
    const Instance inst = gen_max3lin2(12, 3, 2);
    const TrialStats stats = m3l2::run(inst, 0.0, 20000, 5);
    CHECK(std::abs(stats.mean) <= 4.0 * stats.stderr_);
}

TEST_CASE("sampled mean matches the exhaustive expectation on small instances") {
    const Instance inst = gen_max3lin2(8, 3, 2);
    for (double c0 : {0.2, 0.6, 1.5}) { // large c0 exercises the clamped branch
        const double exact = m3l2::exact_expected_objective(inst, c0);
        const TrialStats stats = m3l2::run(inst, c0, 40000, 9);
        CHECK(std::abs(stats.mean - exact) <= 4.0 * stats.stderr_);
    }
}

TEST_CASE("soft-spin rounding preserves the clamped expectation exactly") {
    const Instance fixtures[] = {single_term(), gen_max3lin2(6, 3, 1), gen_max3lin2(8, 3, 7)};
    for (const Instance& inst : fixtures)
        for (double c0 : {0.3, 1.2})
            CHECK(m3l2::exact_expected_objective(inst, c0) ==
                  doctest::Approx(oracles::brute_expected_objective(inst, c0)).epsilon(1e-13));
}

TEST_CASE("measured mean sits within a quarter of the linear term at moderate degree") {
    const Instance inst = gen_max3lin2(48, 8, 3);
    const double c0 = 0.25 * std::pow(8.0, -0.75);
    const TrialStats stats = m3l2::run(inst, c0, 60000, 11);
    const double lin = m3l2::linear_term(inst, c0);
    CHECK(stats.mean > 0.0);
    CHECK(std::abs(stats.mean - lin) < 0.25 * lin);
}

TEST_CASE("clamping never happens below the worst-case force threshold") {
    const Instance inst = gen_max3lin2(12, 4, 6);
    // |F_i| <= D/4, so |v1| <= 1/2 + c0 D / 4 <= 1 whenever c0 <= 2/D
    CHECK(m3l2::clamp_fraction(inst, 0.4, 2000, 3) == 0.0);
    const Instance big = gen_max3lin2(24, 16, 1);
    CHECK(m3l2::clamp_fraction(big, std::pow(16.0, -0.75), 2000, 3) < 1e-2);
}

TEST_CASE("clamp fraction is monotone in the step size on a fixed seed set") {
    const Instance inst = gen_max3lin2(12, 3, 8);
    double prev = 1.0;
    bool saw_positive = false;
    for (double c0 : {1.6, 1.2, 0.9, 0.6, 0.3}) {
        const double frac = m3l2::clamp_fraction(inst, c0, 4000, 21);
        CHECK(frac <= prev);
        prev = frac;
        saw_positive = saw_positive || frac > 0.0;
    }
    CHECK(saw_positive);
}

TEST_CASE("expansion report is internally consistent") {
    const Instance inst = gen_max3lin2(21, 3, 6);
    const double c0 = 0.25 * std::pow(3.0, -0.75);
    const m3l2::ExpansionReport rep = m3l2::make_report(inst, c0, 30000, 13);
    REQUIRE(rep.cubic_oracle.has_value());
    CHECK(rep.predicted_total == rep.linear_term + rep.cubic_loop);
    CHECK(rep.clamp_fraction == 0.0);
    CHECK(std::abs(rep.measured_mean - rep.predicted_total) <= 5.0 * rep.measured_stderr);
}

TEST_CASE("scaling rows stabilize and the odd-arity variant stays positive") {
    const auto rows = m3l2::scaling_experiment({4, 8}, {24, 24}, 0.25, 20000, 7);
    REQUIRE(rows.size() == 2);
    for (const m3l2::ScalingRow& r : rows) {
        CHECK(r.mean > 4.0 * r.stderr_);
        CHECK(r.clamp_fraction < 1e-2);
        CHECK(r.scaled_ratio > 0.0);
    }
    // K = 5 with the same alpha rule; the (1/4)^(K-1) moment damping makes
    // the per-term signal small, so this needs many trials
    const auto k5 = m3l2::scaling_experiment({4}, {60}, 0.25, 400000, 7, 5);
    REQUIRE(k5.size() == 1);
    CHECK(k5[0].mean > 4.0 * k5[0].stderr_);
    // alpha -> 0 limit: the mean vanishes
    const auto zero = m3l2::scaling_experiment({4}, {24}, 0.0, 8000, 7);
    CHECK(std::abs(zero[0].mean) <= 4.0 * zero[0].stderr_);
}

TEST_CASE("pipeline and report are deterministic in the seed") {
    const Instance inst = gen_max3lin2(15, 3, 2);
    const TrialStats a = m3l2::run(inst, 0.2, 5000, 19);
    const TrialStats b = m3l2::run(inst, 0.2, 5000, 19);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    CHECK(m3l2::clamp_fraction(inst, 0.9, 3000, 19) == m3l2::clamp_fraction(inst, 0.9, 3000, 19));
}
