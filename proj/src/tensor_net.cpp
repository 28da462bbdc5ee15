#include "loctensor/tensor_net.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "loctensor/rng.hpp"

namespace loctensor::tn {

namespace {

struct EdgeIndex {
    // leg (t, l) -> edge id, or -1 when external
    std::vector<std::vector<int>> edge_of_leg;
    std::vector<int> edge_dim;

    explicit EdgeIndex(const TensorNetwork& net) {
        edge_of_leg.resize(net.tensors.size());
        for (std::size_t t = 0; t < net.tensors.size(); ++t)
            edge_of_leg[t].assign(net.tensors[t].dims.size(), -1);
        edge_dim.resize(net.edges.size());
        for (std::size_t e = 0; e < net.edges.size(); ++e) {
            const auto& [a, b] = net.edges[e];
            for (const LegRef& ref : {a, b}) {
                if (ref.tensor < 0 || ref.tensor >= static_cast<int>(net.tensors.size()))
                    throw std::invalid_argument("tensor network: edge references missing tensor");
                auto& legs = edge_of_leg[static_cast<std::size_t>(ref.tensor)];
                if (ref.leg < 0 || ref.leg >= static_cast<int>(legs.size()))
                    throw std::invalid_argument("tensor network: edge references missing leg");
                if (legs[static_cast<std::size_t>(ref.leg)] != -1)
                    throw std::invalid_argument("tensor network: leg used by two edges");
                legs[static_cast<std::size_t>(ref.leg)] = static_cast<int>(e);
            }
            const int da = net.tensors[static_cast<std::size_t>(a.tensor)]
                               .dims[static_cast<std::size_t>(a.leg)];
            const int db = net.tensors[static_cast<std::size_t>(b.tensor)]
                               .dims[static_cast<std::size_t>(b.leg)];
            if (da != db)
                throw std::invalid_argument("tensor network: paired legs with unequal dimension");
            edge_dim[e] = da;
        }
    }

    void require_scalar() const {
        for (const auto& legs : edge_of_leg)
            for (int e : legs)
                if (e == -1)
                    throw std::invalid_argument("contract: network has external legs");
    }
};

double product_for_labels(const TensorNetwork& net, const EdgeIndex& index,
                          const std::vector<int>& labels, int skip_tensor) {
    double prod = 1.0;
    std::vector<int> key;
    for (std::size_t t = 0; t < net.tensors.size(); ++t) {
        if (static_cast<int>(t) == skip_tensor) continue;
        const Tensor& tensor = net.tensors[t];
        key.resize(tensor.dims.size());
        for (std::size_t l = 0; l < tensor.dims.size(); ++l)
            key[l] = labels[static_cast<std::size_t>(index.edge_of_leg[t][l])];
        const auto it = tensor.entries.find(key);
        if (it == tensor.entries.end()) return 0.0;
        prod *= it->second;
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

} // namespace

int max_nonzero_entries(const TensorNetwork& net) {
    int d = 0;
    for (const Tensor& t : net.tensors) {
        int cnt = 0;
        for (const auto& [key, val] : t.entries)
            if (val != 0.0) ++cnt;
        d = std::max(d, cnt);
    }
    return d;
}

double contract(const TensorNetwork& net, std::uint64_t max_labelings) {
    const EdgeIndex index(net);
    index.require_scalar();
    if (net.tensors.empty()) return 1.0;

    // pivot = fewest stored entries; its legs are fixed by its entries
    int pivot = 0;
    for (std::size_t t = 1; t < net.tensors.size(); ++t)
        if (net.tensors[t].entries.size() < net.tensors[static_cast<std::size_t>(pivot)].entries.size())
            pivot = static_cast<int>(t);

    std::vector<char> fixed(net.edges.size(), 0);
    for (int e : index.edge_of_leg[static_cast<std::size_t>(pivot)])
        fixed[static_cast<std::size_t>(e)] = 1;
    std::vector<int> free_edges;
    std::uint64_t n_labelings = 1;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        if (fixed[e]) continue;
        free_edges.push_back(static_cast<int>(e));
        const auto dim = static_cast<std::uint64_t>(index.edge_dim[e]);
        if (dim == 0) return 0.0;
        if (n_labelings > max_labelings / dim)
            throw std::runtime_error("contract: labeling count exceeds cap");
        n_labelings *= dim;
    }

    const Tensor& ptensor = net.tensors[static_cast<std::size_t>(pivot)];
    double total = 0.0;
    std::vector<int> labels(net.edges.size(), 0);
    for (const auto& [key, val] : ptensor.entries) {
        if (val == 0.0) continue;
        // a self-loop on the pivot requires both of its legs to agree
        bool consistent = true;
        for (std::size_t e = 0; e < net.edges.size(); ++e)
            if (fixed[e]) labels[e] = -1;
        for (std::size_t l = 0; l < key.size(); ++l) {
            const auto e = static_cast<std::size_t>(
                index.edge_of_leg[static_cast<std::size_t>(pivot)][l]);
            if (labels[e] == -1) labels[e] = key[l];
            else if (labels[e] != key[l]) { consistent = false; break; }
        }
        if (!consistent) continue;

        std::vector<int> counter(free_edges.size(), 0);
        while (true) {
            for (std::size_t f = 0; f < free_edges.size(); ++f)
                labels[static_cast<std::size_t>(free_edges[f])] = counter[f];
            total += val * product_for_labels(net, index, labels, pivot);
            std::size_t f = 0;
            for (; f < free_edges.size(); ++f) {
                if (++counter[f] < index.edge_dim[static_cast<std::size_t>(free_edges[f])]) break;
                counter[f] = 0;
            }
            if (f == free_edges.size()) break;
        }
    }
    return total;
}

double contract_reference(const TensorNetwork& net, std::uint64_t max_labelings) {
    const EdgeIndex index(net);
    index.require_scalar();
    if (net.tensors.empty()) return 1.0;
    std::uint64_t n_labelings = 1;
    for (std::size_t e = 0; e < net.edges.size(); ++e) {
        const auto dim = static_cast<std::uint64_t>(index.edge_dim[e]);
        if (dim == 0) return 0.0;
        if (n_labelings > max_labelings / dim)
            throw std::runtime_error("contract_reference: labeling count exceeds cap");
        n_labelings *= dim;
    }
    double total = 0.0;
    std::vector<int> labels(net.edges.size(), 0);
    for (std::uint64_t it = 0; it < n_labelings; ++it) {
        total += product_for_labels(net, index, labels, -1);
        for (std::size_t e = 0; e < net.edges.size(); ++e) {
            if (++labels[e] < index.edge_dim[e]) break;
            labels[e] = 0;
        }
    }
    return total;
}

TensorNetwork cut(const TensorNetwork& net, const std::vector<int>& s) {
    const int n = static_cast<int>(net.tensors.size());
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int t : s) {
        if (t < 0 || t >= n) throw std::invalid_argument("cut: subset references missing tensor");
        in_s[static_cast<std::size_t>(t)] = 1;
    }
    TensorNetwork out;
    out.tensors = net.tensors;
    out.tensors.insert(out.tensors.end(), net.tensors.begin(), net.tensors.end());
    for (const auto& [a, b] : net.edges) {
        const bool sa = in_s[static_cast<std::size_t>(a.tensor)];
        const bool sb = in_s[static_cast<std::size_t>(b.tensor)];
        if (sa == sb) {
            out.edges.push_back({a, b});
            out.edges.push_back({{a.tensor + n, a.leg}, {b.tensor + n, b.leg}});
        } else {
            // severed: rejoin each endpoint with its mirror in the other copy
            out.edges.push_back({a, {a.tensor + n, a.leg}});
            out.edges.push_back({b, {b.tensor + n, b.leg}});
        }
    }
    return out;
}

CauchySchwarzCheck check_cauchy_schwarz(const TensorNetwork& net, const std::vector<int>& s) {
    CauchySchwarzCheck res;
    const double val = contract(net);
    res.lhs = val * val;
    res.rhs = contract(cut(net, s));
    res.holds = res.lhs <= res.rhs + 1e-9 * std::max(1.0, std::abs(res.rhs));
    return res;
}

LemmaBoundCheck check_lemma_bound(const TensorNetwork& net) {
    for (const Tensor& t : net.tensors)
        for (const auto& [key, val] : t.entries)
            if (std::abs(val) > 1.0 + 1e-12)
                throw std::invalid_argument("check_lemma_bound: entry exceeds 1 in absolute value");
    LemmaBoundCheck res;
    res.n_tensors = static_cast<int>(net.tensors.size());
    res.d = max_nonzero_entries(net);
    res.value = contract(net);
    res.bound = std::pow(static_cast<double>(res.d), 0.5 * res.n_tensors);
    res.holds = std::abs(res.value) <= res.bound + 1e-9;
    return res;
}

TensorNetwork m3l2_loop_network(const Instance& inst, int i, int j, int k) {
    if (inst.k != 3) throw std::invalid_argument("m3l2_loop_network: instance arity must be 3");
    std::vector<int> want{i, j, k};
    std::sort(want.begin(), want.end());
    const bool is_term = std::any_of(inst.terms.begin(), inst.terms.end(),
                                     [&](const Term& t) { return t.idx == want; });
    if (!is_term) throw std::invalid_argument("m3l2_loop_network: (i,j,k) is not a term");

    const int n = inst.n_spins;
    auto coupling_matrix = [&](int spin) {
        Tensor t;
        t.dims = {n, n};
        for (const Term& term : inst.terms) {
            if (std::find(term.idx.begin(), term.idx.end(), spin) == term.idx.end()) continue;
            std::vector<int> others;
            for (int v : term.idx)
                if (v != spin) others.push_back(v);
            t.entries[{others[0], others[1]}] = term.coeff;
            t.entries[{others[1], others[0]}] = term.coeff;
        }
        return t;
    };
    TensorNetwork net;
    net.tensors = {coupling_matrix(i), coupling_matrix(j), coupling_matrix(k)};
    net.edges = {{{0, 1}, {1, 0}}, {{1, 1}, {2, 0}}, {{2, 1}, {0, 0}}};
    return net;
}

TensorNetwork random_network(std::uint64_t seed, int max_tensors, int max_bond, int max_legs,
                             int max_entries) {
    rng::Stream st = rng::substream(seed, 0, 9, 0);
    const int n_t = 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(max_tensors)));
    const int bond = 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(max_bond)));

    TensorNetwork net;
    net.tensors.resize(static_cast<std::size_t>(n_t));
    int total_legs = 0;
    for (Tensor& t : net.tensors) {
        const int legs = 1 + static_cast<int>(st.below(static_cast<std::uint64_t>(max_legs)));
        t.dims.assign(static_cast<std::size_t>(legs), bond);
        total_legs += legs;
    }
    if (total_legs % 2 != 0) {
        net.tensors.front().dims.push_back(bond);
        ++total_legs;
    }

    std::vector<LegRef> legs;
    for (int t = 0; t < n_t; ++t)
        for (int l = 0; l < static_cast<int>(net.tensors[static_cast<std::size_t>(t)].dims.size()); ++l)
            legs.push_back({t, l});
    for (std::size_t i = legs.size(); i > 1; --i)
        std::swap(legs[i - 1], legs[static_cast<std::size_t>(st.below(i))]);
    for (std::size_t i = 0; i + 1 < legs.size(); i += 2)
        net.edges.push_back({legs[i], legs[i + 1]});

    for (Tensor& t : net.tensors) {
        std::uint64_t full = 1;
        for (int d : t.dims) full *= static_cast<std::uint64_t>(d);
        const auto want = std::min<std::uint64_t>(
            full, 1 + st.below(static_cast<std::uint64_t>(max_entries)));
        while (t.entries.size() < want) {
            std::vector<int> key(t.dims.size());
            for (std::size_t l = 0; l < t.dims.size(); ++l)
                key[l] = static_cast<int>(st.below(static_cast<std::uint64_t>(t.dims[l])));
            t.entries[key] = st.uniform(-1.0, 1.0);
        }
    }
    return net;
}

std::vector<int> random_subset(std::uint64_t seed, int n) {
    rng::Stream st = rng::substream(seed, 0, 10, 0);
    std::vector<int> s;
    for (int t = 0; t < n; ++t)
        if (st.bernoulli(0.5)) s.push_back(t);
    return s;
}

} // namespace loctensor::tn
