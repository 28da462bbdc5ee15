#pragma once

#include <string>
#include <vector>

#include "loctensor/engine.hpp"
#include "loctensor/instance.hpp"
#include "loctensor/tensor_net.hpp"

// File formats:
//   instance: {"k":3, "n_spins":6, "terms":[[[0,1,2], 1.0], ...]}
//   graph:    {"n_vertices":4, "degree":2, "triangle_free":true,
//              "edges":[[0,1], ...]}
//   network:  {"tensors":[{"dims":[2,2], "entries":[[[0,1], -0.5], ...]}],
//              "edges":[[[0,0],[1,0]], ...]}
//   run spec: {"init":"pm1|pm_half|uniform|four_point",
//              "steps":[{"c":0.6, "g":"identity|clamp|sign_noise|anneal", ...}],
//              "rounding":"sign|soft", "k":2}           (k optional)

namespace loctensor::io {

struct RunSpec {
    InitKind init = InitKind::PlusMinusOne;
    UpdateSchedule schedule;
    RoundingRule rounding = RoundingRule::Sign;
    int expected_k = 0; // 0 = unconstrained
};

std::string to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

std::string to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

std::string to_json(const tn::TensorNetwork& net);
tn::TensorNetwork network_from_json(const std::string& text);
std::vector<tn::TensorNetwork> networks_from_json(const std::string& text);

RunSpec run_spec_from_json(const std::string& text);
std::string to_json(const RunSpec& spec);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace loctensor::io
