#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loctensor/instance.hpp"

// The local tensor algorithm: a real value per spin is initialized i.i.d.,
// updated by v <- g(v + c * F(v)) for a bounded number of steps, and rounded
// to spins. The force F_i is half the objective difference between Z_i = +1
// and Z_i = -1 with every other spin relaxed to its current real value.
//
// Only the single-vector update is implemented; multi-vector state and
// update rules built from contracted coupling networks are a documented
// extension point, not code.

namespace loctensor {

struct StateVector {
    std::vector<double> values;
    int step = 0;
};

enum class InitKind {
    PlusMinusOne,      // uniform on {-1, +1}
    PlusMinusHalf,     // uniform on {-1/2, +1/2}
    ContinuousUniform, // uniform on [-1, +1]
    FourPoint,         // uniform on {-1, -1/3, +1/3, +1}
};

enum class GKind {
    Identity,
    Clamp,               // clamp to [-1, +1]
    SignWithBiasedNoise, // output +-1 with probabilities keyed on sign of input
    AnnealStep,          // heat-bath +-1 update; input must encode a +-1 state
};

struct Nonlinearity {
    GKind kind = GKind::Identity;
    // SignWithBiasedNoise: P(output = +1) by sign status of the input
    double p_plus_pos = 1.0;
    double p_plus_zero = 0.5;
    double p_plus_neg = 0.0;
    // AnnealStep
    double temperature = 1.0; // may be +inf
    double flip_rate = 1.0;   // probability the site is resampled this step
};

struct Step {
    double c = 0.0;
    Nonlinearity g;
};

using UpdateSchedule = std::vector<Step>;

enum class RoundingRule {
    Sign,     // Z_i = sign(v_i), fair coin on exact zero
    SoftSpin, // E[Z_i] = v_i for |v_i| <= 1, sign(v_i) otherwise
};

// addresses for the per-(trial, step, site) random substreams
struct RunContext {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
};

// obj(v) = sum over terms of coeff * prod v_i; exact term evaluation
double objective_value(const Instance& inst, std::span<const double> v);
double objective_value(const Instance& inst, const SpinAssignment& z);

// F_i = sum over terms containing i of coeff * prod over the other spins
std::vector<double> compute_force(const Instance& inst, std::span<const double> v);
// straightforward +-1-substitution difference, kept as a reference
std::vector<double> compute_force_reference(const Instance& inst, std::span<const double> v);

StateVector sample_init(InitKind init, int n, const RunContext& ctx);

// elementwise g(v_i + c * F_i); step_index selects the randomness phase
StateVector apply_step(const Instance& inst, const StateVector& v, double c,
                       const Nonlinearity& g, const RunContext& ctx);

SpinAssignment round_spins(const StateVector& v, RoundingRule rule, const RunContext& ctx);

struct RunResult {
    SpinAssignment z;
    double objective = 0.0;
};

RunResult run_local_tensor(const Instance& inst, InitKind init,
                           const UpdateSchedule& schedule, RoundingRule rule,
                           std::uint64_t seed, std::uint64_t trial = 0);

struct TrialStats {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t trials = 0;
};

// independent trials of the full pipeline (parallel over trials)
TrialStats run_trials(const Instance& inst, InitKind init, const UpdateSchedule& schedule,
                      RoundingRule rule, std::uint64_t seed, std::uint64_t trials,
                      std::vector<double>* per_trial = nullptr);

// P(spin flips in one anneal step | current spin s, force f)
double anneal_flip_probability(int s, double force, double temperature, double flip_rate);

// max |F_i| over +-1 states: sum of |coeff| over terms at the busiest spin
double force_bound(const Instance& inst);

// Simulated annealing as a schedule of AnnealStep nonlinearities with a
// small linear coefficient; states stay in {-1,+1}^N throughout.
RunResult run_annealing(const Instance& inst, const std::vector<double>& temperatures,
                        double flip_rate, std::uint64_t seed, std::uint64_t trial = 0,
                        std::vector<SpinAssignment>* trace = nullptr);

} // namespace loctensor
