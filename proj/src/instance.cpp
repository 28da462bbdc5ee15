#include "loctensor/instance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "loctensor/rng.hpp"

namespace loctensor {

namespace {

constexpr int kRetryCap = 10000;

void shuffle(std::vector<int>& v, rng::Stream& st) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(st.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace

std::vector<int> degree_profile(const Instance& inst) {
    std::vector<int> deg(static_cast<std::size_t>(inst.n_spins), 0);
    for (const Term& t : inst.terms)
        for (int i : t.idx)
            if (i >= 0 && i < inst.n_spins) ++deg[static_cast<std::size_t>(i)];
    return deg;
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport rep;
    if (inst.k < 2) {
        rep.errors.push_back("arity k must be at least 2");
        rep.valid = false;
    }
    std::set<std::vector<int>> seen;
    for (std::size_t t = 0; t < inst.terms.size(); ++t) {
        const Term& term = inst.terms[t];
        const std::string where = "term " + std::to_string(t);
        if (static_cast<int>(term.idx.size()) != inst.k) {
            rep.errors.push_back(where + ": has " + std::to_string(term.idx.size()) +
                                 " indices, expected " + std::to_string(inst.k));
            rep.valid = false;
        }
        bool in_range = true;
        for (int i : term.idx)
            if (i < 0 || i >= inst.n_spins) in_range = false;
        if (!in_range) {
            rep.errors.push_back(where + ": index out of [0, n_spins)");
            rep.valid = false;
        }
        std::vector<int> sorted = term.idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            rep.errors.push_back(where + ": repeated spin index");
            rep.valid = false;
        } else if (!seen.insert(sorted).second) {
            rep.errors.push_back(where + ": duplicate unordered term");
            rep.valid = false;
        }
        if (term.coeff != 1.0 && term.coeff != -1.0)
            rep.warnings.push_back(where + ": coefficient not in {-1,+1}");
    }
    rep.degrees = degree_profile(inst);
    if (!rep.degrees.empty()) {
        const int d0 = rep.degrees.front();
        rep.degree_regular =
            std::all_of(rep.degrees.begin(), rep.degrees.end(),
                        [d0](int d) { return d == d0; }) &&
            d0 > 0;
        rep.degree = rep.degree_regular ? d0 : 0;
    }
    return rep;
}

Instance gen_regular_klin2(int n, int d, int k, std::uint64_t seed, SignMode sign_mode) {
    if (k < 2) throw std::invalid_argument("gen_regular_klin2: k must be >= 2");
    if (n < k) throw std::invalid_argument("gen_regular_klin2: need n >= k");
    if (d < 1) throw std::invalid_argument("gen_regular_klin2: need d >= 1");
    if ((static_cast<long long>(n) * d) % k != 0)
        throw std::invalid_argument("gen_regular_klin2: n*d must be divisible by k");

    const std::size_t n_terms = static_cast<std::size_t>(static_cast<long long>(n) * d / k);
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));

    // Expected collisions in a raw stub matching grow with d, so a full
    // resample on any bad hyperedge stalls for dense instances. Instead,
    // swap stubs out of offending groups until every group has k distinct
    // spins and no unordered term repeats; fall back to a fresh shuffle if
    // a repair round does not converge.
    auto repair = [&](rng::Stream& st) {
        std::vector<int> sorted(kk);
        for (int pass = 0; pass < 400; ++pass) {
            std::set<std::vector<int>> seen;
            std::vector<std::size_t> bad;
            for (std::size_t g = 0; g < n_terms; ++g) {
                sorted.assign(stubs.begin() + static_cast<std::ptrdiff_t>(g * kk),
                              stubs.begin() + static_cast<std::ptrdiff_t>((g + 1) * kk));
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
                    !seen.insert(sorted).second)
                    bad.push_back(g);
            }
            if (bad.empty()) return true;
            for (std::size_t g : bad) {
                const std::size_t a = g * kk + static_cast<std::size_t>(st.below(kk));
                const std::size_t b = static_cast<std::size_t>(st.below(stubs.size()));
                std::swap(stubs[a], stubs[b]);
            }
        }
        return false;
    };

    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        rng::Stream st = rng::substream(seed, static_cast<std::uint64_t>(attempt), 0, 0);
        std::size_t pos = 0;
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < d; ++r) stubs[pos++] = i;
        shuffle(stubs, st);
        if (!repair(st)) continue;

        Instance inst;
        inst.k = k;
        inst.n_spins = n;
        inst.terms.reserve(n_terms);
        for (std::size_t t = 0; t < n_terms; ++t) {
            Term term;
            term.idx.assign(stubs.begin() + static_cast<std::ptrdiff_t>(t * kk),
                            stubs.begin() + static_cast<std::ptrdiff_t>((t + 1) * kk));
            std::sort(term.idx.begin(), term.idx.end());
            term.coeff = sign_mode == SignMode::AllPlus ? 1.0 : static_cast<double>(st.sign());
            inst.terms.push_back(std::move(term));
        }
        return inst;
    }
    throw std::runtime_error("gen_regular_klin2: retry cap (" + std::to_string(kRetryCap) +
                             ") exceeded for n=" + std::to_string(n) + " d=" + std::to_string(d) +
                             " k=" + std::to_string(k));
}

bool has_triangle(const Graph& g) {
    std::vector<std::set<int>> adj(static_cast<std::size_t>(g.n_vertices));
    for (auto [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
    }
    for (auto [u, v] : g.edges) {
        const auto& a = adj[static_cast<std::size_t>(u)];
        const auto& b = adj[static_cast<std::size_t>(v)];
        for (int w : a)
            if (w != v && b.count(w)) return true;
    }
    return false;
}

namespace {

bool simple_edges(const std::vector<std::pair<int, int>>& edges) {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u == v) return false;
        auto e = std::minmax(u, v);
        if (!seen.insert({e.first, e.second}).second) return false;
    }
    return true;
}

} // namespace

Graph gen_bipartite_regular_graph(int n_per_side, int d, std::uint64_t seed) {
    if (d < 1 || n_per_side < d)
        throw std::invalid_argument("gen_bipartite_regular_graph: need n_per_side >= d >= 1");

    std::vector<int> right(static_cast<std::size_t>(n_per_side) * static_cast<std::size_t>(d));
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        rng::Stream st = rng::substream(seed, static_cast<std::uint64_t>(attempt), 1, 0);
        std::size_t pos = 0;
        for (int i = 0; i < n_per_side; ++i)
            for (int r = 0; r < d; ++r) right[pos++] = n_per_side + i;
        shuffle(right, st);

        Graph g;
        g.n_vertices = 2 * n_per_side;
        g.degree = d;
        g.edges.reserve(right.size());
        pos = 0;
        for (int i = 0; i < n_per_side; ++i)
            for (int r = 0; r < d; ++r) g.edges.emplace_back(i, right[pos++]);
        if (!simple_edges(g.edges)) continue;
        g.triangle_free = !has_triangle(g); // always true for bipartite; verified anyway
        return g;
    }
    throw std::runtime_error("gen_bipartite_regular_graph: retry cap exceeded");
}

Graph gen_triangle_free_regular_graph(int n, int d, std::uint64_t seed) {
    if (d < 1 || n <= d)
        throw std::invalid_argument("gen_triangle_free_regular_graph: need n > d >= 1");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("gen_triangle_free_regular_graph: n*d must be even");

    std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        rng::Stream st = rng::substream(seed, static_cast<std::uint64_t>(attempt), 2, 0);
        std::size_t pos = 0;
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < d; ++r) stubs[pos++] = i;
        shuffle(stubs, st);

        Graph g;
        g.n_vertices = n;
        g.degree = d;
        g.edges.reserve(stubs.size() / 2);
        for (std::size_t e = 0; e < stubs.size(); e += 2)
            g.edges.emplace_back(stubs[e], stubs[e + 1]);
        if (!simple_edges(g.edges)) continue;
        if (has_triangle(g)) continue;
        g.triangle_free = true;
        return g;
    }
    throw std::runtime_error("gen_triangle_free_regular_graph: retry cap (" +
                             std::to_string(kRetryCap) + ") exceeded for n=" +
                             std::to_string(n) + " d=" + std::to_string(d));
}

Instance maxcut_as_max2lin2(const Graph& g) {
    Instance inst;
    inst.k = 2;
    inst.n_spins = g.n_vertices;
    inst.terms.reserve(g.edges.size());
    for (auto [u, v] : g.edges) {
        Term t;
        t.idx = {std::min(u, v), std::max(u, v)};
        t.coeff = -1.0;
        inst.terms.push_back(std::move(t));
    }
    return inst;
}

long long cut_value(const Graph& g, const SpinAssignment& z) {
    if (static_cast<int>(z.size()) != g.n_vertices)
        throw std::invalid_argument("cut_value: assignment length mismatch");
    long long cut = 0;
    for (auto [u, v] : g.edges)
        if (z[static_cast<std::size_t>(u)] != z[static_cast<std::size_t>(v)]) ++cut;
    return cut;
}

} // namespace loctensor
