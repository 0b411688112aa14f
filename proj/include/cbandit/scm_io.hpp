#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cbandit/scm.hpp"

namespace cbandit {

// JSON layout:
//   { "n": 3, "cardinality": 2,
//     "parents": [[], [0], [0, 1]],
//     "cpts":    [ [[p, ...], ...], ... ],          one row per parent configuration
//     "reward":  { "kind": "bernoulli", "parents": [2],
//                  "means": { "0": 0.25, "1": 0.75 } } }   keyed by configuration rank
// Doubles are written with round-trip precision, so reloading is bit-exact.

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["n"] = inst.n();
    j["cardinality"] = inst.cardinality();
    j["parents"] = inst.graph().parent_lists();
    auto cpts = nlohmann::json::array();
    for (const auto& cpt : inst.cpts()) cpts.push_back(cpt.rows);
    j["cpts"] = std::move(cpts);
    nlohmann::json means = nlohmann::json::object();
    for (std::size_t c = 0; c < inst.reward().means.size(); ++c) means[std::to_string(c)] = inst.reward().means[c];
    j["reward"] = {{"kind", to_string(inst.reward().kind)}, {"parents", inst.reward().parents}, {"means", std::move(means)}};
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const int l = j.at("cardinality").get<int>();
    auto parents = j.at("parents").get<std::vector<std::vector<NodeIndex>>>();
    if (static_cast<int>(parents.size()) != n) throw std::invalid_argument("instance json: parents length != n");
    const auto& jc = j.at("cpts");
    if (!jc.is_array() || static_cast<int>(jc.size()) != n) throw std::invalid_argument("instance json: cpts length != n");
    std::vector<CategoricalCpt> cpts;
    for (int v = 0; v < n; ++v) {
        cpts.push_back({v, l, jc[static_cast<std::size_t>(v)].get<std::vector<std::vector<double>>>()});
    }
    const auto& jr = j.at("reward");
    RewardModel reward;
    reward.kind = parse_reward_kind(jr.at("kind").get<std::string>());
    reward.parents = jr.at("parents").get<std::vector<NodeIndex>>();
    const auto& jm = jr.at("means");
    reward.means.assign(jm.size(), 0.0);
    for (auto it = jm.begin(); it != jm.end(); ++it) {
        std::size_t pos = 0;
        const unsigned long long idx = std::stoull(it.key(), &pos);
        if (pos != it.key().size() || idx >= reward.means.size()) {
            throw std::invalid_argument("instance json: bad reward configuration key '" + it.key() + "'");
        }
        reward.means[idx] = it.value().get<double>();
    }
    return Instance(CausalGraph(std::move(parents)), l, std::move(cpts), std::move(reward));
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << instance_to_json(inst).dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    try {
        return instance_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
}

}  // namespace cbandit
