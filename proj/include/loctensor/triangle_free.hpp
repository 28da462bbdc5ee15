#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loctensor/engine.hpp"

// Exact one-step analysis on triangle-free degree-D graphs.
//
// For one step, the joint law of a neighboring pair (Z_i, Z_j) depends only
// on the star-pair subgraph: i and j joined by an edge, each with D-1
// private neighbors. With initial spins drawn i.i.d. from {-1,+1} and a
// flip rule q (q(m) = E[Z_i relative to its initial sign when m of its D
// neighbors initially agree), the expected improvement over a random cut,
// per edge, is
//
//   1/4 * [ (sum_n w(n) q(n))^2 - (sum_n w(n) q(n+1))^2 ],
//
// with binomial weights w(n) = 2^-(D-1) * C(D-1, n) over n = 0..D-1.

namespace loctensor::tf {

struct FlipRule {
    int d = 0;
    std::vector<double> q; // size d+1, entries in [-1, +1]
};

struct ThresholdOptimum {
    int tau = 0;
    double improvement = 0.0;
};

struct SoftThresholdOptimum {
    FlipRule rule;
    int boundary = 0;            // agreement count with the fractional entry
    double boundary_value = 0.0; // q at the boundary
    double improvement = 0.0;
};

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t samples = 0;
};

struct ScanRow {
    int d = 0;
    int tau_star = 0;
    double thr_improvement = 0.0;
    double thr_scaled = 0.0; // sqrt(d) * improvement
    double qaoa_improvement = 0.0;
    double qaoa_scaled = 0.0;
};

// outcome of one analytic or sampled evaluation, for reporting
struct EvalResult {
    int d = 0;
    double improvement = 0.0;
    std::string method; // exact-binomial | exact-enumeration | monte-carlo
    std::string params;
    double stderr_ = 0.0;      // zero for exact methods
    std::uint64_t samples = 0; // monte-carlo only
};

// w(n) = 2^-(d-1) * C(d-1, n); multiplicative recursion, no factorials
std::vector<double> agree_count_weights(int d);

// exact per-edge E[-1/2 Z_i Z_j]
double expected_improvement(const FlipRule& rule);

// hard threshold: flip iff at least tau of the d neighbors agree;
// tau = d+1 never flips
FlipRule threshold_rule(int d, int tau);

// exhaustive over tau in {0..d+1}, smallest tau on ties
ThresholdOptimum optimize_threshold(int d);

// rules +1 below a boundary count, -1 above it, a grid value s at it;
// smallest boundary then smallest s on ties
SoftThresholdOptimum optimize_soft_threshold(int d, double grid_step = 0.01);

// optimal one-step QAOA improvement: (1 / 2 sqrt(d)) * (1 - 1/d)^((d-1)/2)
double qaoa_one_step(int d);

// tuned soft rules at the two degrees where the hard threshold trails the
// one-step QAOA value; see *_reading() for the exact parameterization
FlipRule d11_soft_rule(); // q(7) = -0.1
FlipRule d6_soft_rule();  // q(4) = +0.3
const char* d6_soft_rule_reading();

// a linear-step coefficient realizing the hard threshold tau under
// {-1,+1} initialization (flip iff c*(2m - d) > 1); throws when no
// positive c realizes tau
double c_for_tau(int d, int tau);

// Exact E[-1/2 Z_i Z_j] for a single linear step v1 = v0 - c * A v0 on the
// star-pair subgraph, for finite-support inits (PlusMinusOne, PlusMinusHalf,
// FourPoint), by convolving the neighbor-sum distribution. Sign rounding;
// an exact zero contributes expectation 0.
double enumerate_local_subgraph(int d, InitKind init, double c);

// Monte Carlo estimate of the same quantity; valid for any init.
// Deterministic in (seed, samples) regardless of thread count.
McEstimate mc_local_subgraph(int d, InitKind init, double c, std::uint64_t samples,
                             std::uint64_t seed);
// plain-loop reference used by tests and the benchmark
McEstimate mc_local_subgraph_reference(int d, InitKind init, double c, std::uint64_t samples,
                                       std::uint64_t seed);

std::vector<ScanRow> scaling_scan(int d_min, int d_max);

// degrees in a scan where the threshold optimum is strictly below QAOA
std::vector<int> qaoa_wins(const std::vector<ScanRow>& rows);

} // namespace loctensor::tf
