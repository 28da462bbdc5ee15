#include "loctensor/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace loctensor::io {

using nlohmann::json;

namespace {

json term_to_json(const Term& t) { return json::array({t.idx, t.coeff}); }

std::string init_name(InitKind k) {
    switch (k) {
    case InitKind::PlusMinusOne: return "pm1";
    case InitKind::PlusMinusHalf: return "pm_half";
    case InitKind::ContinuousUniform: return "uniform";
    case InitKind::FourPoint: return "four_point";
    }
    return "pm1";
}

InitKind init_from_name(const std::string& s) {
    if (s == "pm1") return InitKind::PlusMinusOne;
    if (s == "pm_half") return InitKind::PlusMinusHalf;
    if (s == "uniform") return InitKind::ContinuousUniform;
    if (s == "four_point") return InitKind::FourPoint;
    throw std::invalid_argument("unknown init distribution: " + s);
}

std::string g_name(GKind k) {
    switch (k) {
    case GKind::Identity: return "identity";
    case GKind::Clamp: return "clamp";
    case GKind::SignWithBiasedNoise: return "sign_noise";
    case GKind::AnnealStep: return "anneal";
    }
    return "identity";
}

GKind g_from_name(const std::string& s) {
    if (s == "identity") return GKind::Identity;
    if (s == "clamp") return GKind::Clamp;
    if (s == "sign_noise") return GKind::SignWithBiasedNoise;
    if (s == "anneal") return GKind::AnnealStep;
    throw std::invalid_argument("unknown nonlinearity: " + s);
}

} // namespace

std::string to_json(const Instance& inst) {
    json j;
    j["k"] = inst.k;
    j["n_spins"] = inst.n_spins;
    j["terms"] = json::array();
    for (const Term& t : inst.terms) j["terms"].push_back(term_to_json(t));
    return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
    const json j = json::parse(text);
    Instance inst;
    inst.k = j.at("k").get<int>();
    inst.n_spins = j.at("n_spins").get<int>();
    for (const json& jt : j.at("terms")) {
        Term t;
        t.idx = jt.at(0).get<std::vector<int>>();
        t.coeff = jt.at(1).get<double>();
        inst.terms.push_back(std::move(t));
    }
    return inst;
}

std::string to_json(const Graph& g) {
    json j;
    j["n_vertices"] = g.n_vertices;
    j["degree"] = g.degree;
    j["triangle_free"] = g.triangle_free;
    j["edges"] = json::array();
    for (auto [u, v] : g.edges) j["edges"].push_back(json::array({u, v}));
    return j.dump(2);
}

Graph graph_from_json(const std::string& text) {
    const json j = json::parse(text);
    Graph g;
    g.n_vertices = j.at("n_vertices").get<int>();
    g.degree = j.value("degree", 0);
    g.triangle_free = j.value("triangle_free", false);
    for (const json& je : j.at("edges"))
        g.edges.emplace_back(je.at(0).get<int>(), je.at(1).get<int>());
    return g;
}

namespace {

json network_to_json_obj(const tn::TensorNetwork& net) {
    json j;
    j["tensors"] = json::array();
    for (const tn::Tensor& t : net.tensors) {
        json jt;
        jt["dims"] = t.dims;
        jt["entries"] = json::array();
        for (const auto& [key, val] : t.entries)
            jt["entries"].push_back(json::array({key, val}));
        j["tensors"].push_back(std::move(jt));
    }
    j["edges"] = json::array();
    for (const auto& [a, b] : net.edges)
        j["edges"].push_back(json::array(
            {json::array({a.tensor, a.leg}), json::array({b.tensor, b.leg})}));
    return j;
}

tn::TensorNetwork network_from_json_obj(const json& j) {
    tn::TensorNetwork net;
    for (const json& jt : j.at("tensors")) {
        tn::Tensor t;
        t.dims = jt.at("dims").get<std::vector<int>>();
        for (const json& je : jt.at("entries"))
            t.entries[je.at(0).get<std::vector<int>>()] = je.at(1).get<double>();
        net.tensors.push_back(std::move(t));
    }
    for (const json& je : j.at("edges")) {
        tn::LegRef a{je.at(0).at(0).get<int>(), je.at(0).at(1).get<int>()};
        tn::LegRef b{je.at(1).at(0).get<int>(), je.at(1).at(1).get<int>()};
        net.edges.push_back({a, b});
    }
    return net;
}

} // namespace

std::string to_json(const tn::TensorNetwork& net) { return network_to_json_obj(net).dump(2); }

tn::TensorNetwork network_from_json(const std::string& text) {
    return network_from_json_obj(json::parse(text));
}

std::vector<tn::TensorNetwork> networks_from_json(const std::string& text) {
    const json j = json::parse(text);
    std::vector<tn::TensorNetwork> nets;
    if (j.is_array())
        for (const json& jn : j) nets.push_back(network_from_json_obj(jn));
    else nets.push_back(network_from_json_obj(j));
    return nets;
}

RunSpec run_spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunSpec spec;
    spec.init = init_from_name(j.at("init").get<std::string>());
    for (const json& js : j.at("steps")) {
        Step step;
        step.c = js.at("c").get<double>();
        step.g.kind = g_from_name(js.value("g", std::string("identity")));
        if (step.g.kind == GKind::SignWithBiasedNoise) {
            step.g.p_plus_pos = js.value("p_plus_pos", 1.0);
            step.g.p_plus_zero = js.value("p_plus_zero", 0.5);
            step.g.p_plus_neg = js.value("p_plus_neg", 0.0);
        } else if (step.g.kind == GKind::AnnealStep) {
            step.g.temperature = js.at("temperature").get<double>();
            step.g.flip_rate = js.value("flip_rate", 1.0);
        }
        spec.schedule.push_back(step);
    }
    const std::string rounding = j.at("rounding").get<std::string>();
    if (rounding == "sign") spec.rounding = RoundingRule::Sign;
    else if (rounding == "soft") spec.rounding = RoundingRule::SoftSpin;
    else throw std::invalid_argument("unknown rounding rule: " + rounding);
    spec.expected_k = j.value("k", 0);
    return spec;
}

std::string to_json(const RunSpec& spec) {
    json j;
    j["init"] = init_name(spec.init);
    j["steps"] = json::array();
    for (const Step& s : spec.schedule) {
        json js;
        js["c"] = s.c;
        js["g"] = g_name(s.g.kind);
        if (s.g.kind == GKind::SignWithBiasedNoise) {
            js["p_plus_pos"] = s.g.p_plus_pos;
            js["p_plus_zero"] = s.g.p_plus_zero;
            js["p_plus_neg"] = s.g.p_plus_neg;
        } else if (s.g.kind == GKind::AnnealStep) {
            js["temperature"] = s.g.temperature;
            js["flip_rate"] = s.g.flip_rate;
        }
        j["steps"].push_back(std::move(js));
    }
    j["rounding"] = spec.rounding == RoundingRule::Sign ? "sign" : "soft";
    if (spec.expected_k > 0) j["k"] = spec.expected_k;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

} // namespace loctensor::io
