#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "loctensor/instance.hpp"

// Brute-force tensor network contraction and the doubling construction
// behind the sparse-contraction bound: a scalar network M whose tensors
// each have at most d nonzero entries, all bounded by 1 in absolute value,
// contracts to a value bounded by d^(N_T/2).
//
// Desk-scale on purpose: contraction enumerates edge labelings, iterating
// over the nonzero entries of one pivot tensor, with a hard cap on the
// number of labelings. No contraction-order optimization.

namespace loctensor::tn {

struct Tensor {
    std::vector<int> dims;                      // bond dimension per leg
    std::map<std::vector<int>, double> entries; // sparse, keyed by index tuple
};

struct LegRef {
    int tensor = 0;
    int leg = 0;
};

struct TensorNetwork {
    std::vector<Tensor> tensors;
    std::vector<std::pair<LegRef, LegRef>> edges;
};

inline constexpr std::uint64_t kMaxLabelings = 100000000ULL;

// exact sum over all edge labelings of the product of tensor entries;
// throws on external (unpaired) legs, mismatched bond dimensions, or when
// the labeling count exceeds the cap
double contract(const TensorNetwork& net, std::uint64_t max_labelings = kMaxLabelings);

// full mixed-radix enumeration without the pivot shortcut, for cross-checks
double contract_reference(const TensorNetwork& net, std::uint64_t max_labelings = kMaxLabelings);

// Sever every edge between S and its complement, duplicate the network, and
// rejoin matching severed legs across the two copies. The result has twice
// the vertices and is again scalar. Cutting vertex classes one at a time
// ends in a bipartite network after N_T doublings; choosing classes by bit
// positions of a vertex labeling needs only ceil(log2(N_T)) doublings, but
// nothing here relies on that shortcut.
TensorNetwork cut(const TensorNetwork& net, const std::vector<int>& s);

struct CauchySchwarzCheck {
    double lhs = 0.0; // Val(M)^2
    double rhs = 0.0; // Val(Cut(M, S))
    bool holds = false;
};

CauchySchwarzCheck check_cauchy_schwarz(const TensorNetwork& net, const std::vector<int>& s);

struct LemmaBoundCheck {
    double value = 0.0;
    double bound = 0.0; // d^(N_T / 2)
    int d = 0;
    int n_tensors = 0;
    bool holds = false;
};

// requires every entry bounded by 1 in absolute value
LemmaBoundCheck check_lemma_bound(const TensorNetwork& net);

// max over tensors of the nonzero-entry count
int max_nonzero_entries(const TensorNetwork& net);

// The closed three-coupling loop of a MAX-3-LIN-2 term (i,j,k): matrices
// A1[l,m] = J(i,l,m), A2[m,o] = J(j,m,o), A3[o,l] = J(k,o,l) joined in a
// triangle; contraction equals sum_{l,m,o} J(i,l,m) J(j,m,o) J(k,o,l).
TensorNetwork m3l2_loop_network(const Instance& inst, int i, int j, int k);

// small random sparse scalar networks for the randomized bound suites
TensorNetwork random_network(std::uint64_t seed, int max_tensors = 4, int max_bond = 4,
                             int max_legs = 3, int max_entries = 4);
std::vector<int> random_subset(std::uint64_t seed, int n);

} // namespace loctensor::tn
