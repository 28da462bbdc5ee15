#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Problem instances for MAX-K-LIN-2 and MAX-CUT.
//
// An instance stores an unordered term list: each term is a sorted tuple of
// K distinct spin indices with a coupling coefficient. The objective of a
// spin configuration Z is
//
//     obj(Z) = sum over stored terms of  coeff * prod_{i in term} Z_i,
//
// which equals (1/K!) * sum over the fully symmetrized coupling tensor.

namespace loctensor {

struct Term {
    std::vector<int> idx; // sorted, distinct, size k
    double coeff = 0.0;   // usually in {-1, +1}
};

struct Instance {
    int k = 0;
    int n_spins = 0;
    std::vector<Term> terms;
};

struct Graph {
    int n_vertices = 0;
    int degree = 0;           // 0 when not declared regular
    bool triangle_free = false; // set only after verification
    std::vector<std::pair<int, int>> edges;
};

// one spin per vertex, entries in {-1, +1}
using SpinAssignment = std::vector<std::int8_t>;

struct ValidationReport {
    bool valid = true;
    bool degree_regular = false;
    int degree = 0;
    std::vector<int> degrees; // per-spin term count
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

enum class SignMode { AllPlus, UniformRandom };

// Structural checks: index ranges, distinctness within a term, duplicate
// unordered terms, degree profile and regularity. Non-{-1,+1} coefficients
// are reported as warnings only.
ValidationReport validate_instance(const Instance& inst);

// Degree-regular random MAX-K-LIN-2 via stub matching; resamples from
// scratch on a repeated-vertex hyperedge or duplicate term. Requires
// n*d divisible by k. Throws on bad parameters or after 10000 attempts.
Instance gen_regular_klin2(int n, int d, int k, std::uint64_t seed,
                           SignMode sign_mode = SignMode::UniformRandom);

inline Instance gen_max3lin2(int n, int d, std::uint64_t seed,
                             SignMode sign_mode = SignMode::UniformRandom) {
    return gen_regular_klin2(n, d, 3, seed, sign_mode);
}

// d-regular bipartite graph on 2*n_per_side vertices (triangle-free by
// construction, then verified).
Graph gen_bipartite_regular_graph(int n_per_side, int d, std::uint64_t seed);

// d-regular graph with no triangles, by pairing-model sampling with
// whole-graph rejection on loops, multi-edges and triangles.
Graph gen_triangle_free_regular_graph(int n, int d, std::uint64_t seed);

// exhaustive check over adjacent edge pairs
bool has_triangle(const Graph& g);

// MAX-CUT as MAX-2-LIN-2: one term per edge with coefficient -1.
Instance maxcut_as_max2lin2(const Graph& g);

// |{(u,v) in E : z_u != z_v}|; equals Ne/2 + obj(z)/2 for the instance above
long long cut_value(const Graph& g, const SpinAssignment& z);

std::vector<int> degree_profile(const Instance& inst);

} // namespace loctensor
