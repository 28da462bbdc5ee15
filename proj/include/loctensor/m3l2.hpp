#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "loctensor/engine.hpp"
#include "loctensor/instance.hpp"

// Single-step analysis for MAX-3-LIN-2: initialize v0 i.i.d. uniform on
// {-1/2, +1/2}, take one identity step v1 = v0 + c0 * F(v0), round with soft
// spins (values beyond [-1, 1] round to their sign). The expectation of the
// objective expands in powers of c0: even orders vanish by symmetry, the
// first order is linear in the term count, and the third order reduces to a
// closed sum over four-coupling loops.
//
// All exhaustive oracles below enumerate v0 over {-1/2,+1/2}^N; every
// intermediate value is a dyadic rational, so the sums are exact in double
// precision.

namespace loctensor::m3l2 {

// first-order coefficient times c0: c0 * (3/16) * sum over terms of coeff^2,
// which is c0 * D * N / 16 for degree-regular +-1 instances
double linear_term(const Instance& inst, double c0);

// sum over the symmetrized tensor of J(i,j,k) J(i,l,m) J(j,m,o) J(k,o,l)
double loop_sum(const Instance& inst);

// third-order coefficient of the expansion per unit c0^3, as a multiple of
// loop_sum; the value was fixed against the exhaustive oracle (see tests),
// not transcribed from the combinatorial matching count
inline constexpr double kCubicLoopCoefficient = 1.0 / 384.0;

struct CubicTerm {
    double loop_formula = 0.0;
    std::optional<double> oracle; // exhaustive path, when n_spins <= 24
    bool agree = false;
};

CubicTerm cubic_term(const Instance& inst, double c0);

// mean over v0 of the c0^order coefficient of obj(v0 + c0 F); order in {1,2,3}
double expansion_coefficient_exhaustive(const Instance& inst, int order);

// E[objective of the rounded spins], exhaustively over v0, including the
// out-of-range clamping of soft-spin means
double exact_expected_objective(const Instance& inst, double c0);

// sampled pipeline: init, one identity step, soft-spin rounding
TrialStats run(const Instance& inst, double c0, std::uint64_t trials, std::uint64_t seed);

// fraction of (spin, trial) pairs with |v1_i| > 1
double clamp_fraction(const Instance& inst, double c0, std::uint64_t trials, std::uint64_t seed);

struct ExpansionReport {
    double c0 = 0.0;
    double linear_term = 0.0;
    double cubic_loop = 0.0;
    std::optional<double> cubic_oracle;
    double predicted_total = 0.0; // linear + cubic
    double measured_mean = 0.0;
    double measured_stderr = 0.0;
    std::uint64_t trials = 0;
    double clamp_fraction = 0.0;
};

ExpansionReport make_report(const Instance& inst, double c0, std::uint64_t trials,
                            std::uint64_t seed);

struct ScalingRow {
    int d = 0;
    int n = 0;
    double c0 = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double scaled_ratio = 0.0; // mean / (d^(1/4) * n)
    double clamp_fraction = 0.0;
};

// one row per degree with c0 = alpha * d^(-3/4); instances are generated
// deterministically from (seed, d) and k defaults to 3
std::vector<ScalingRow> scaling_experiment(const std::vector<int>& d_list,
                                           const std::vector<int>& n_list, double alpha,
                                           std::uint64_t trials, std::uint64_t seed, int k = 3);

} // namespace loctensor::m3l2
