#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cbandit {

/// Variable values live in {1, ..., l}; node indices are 0-based.
using Value = int;
using NodeIndex = int;

/// A hard intervention do(X_nodes = values). `nodes` is sorted ascending and
/// `values[i]` is the value assigned to `nodes[i]`.
struct Action {
    std::vector<NodeIndex> nodes;
    std::vector<Value> values;

    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }

    friend bool operator==(const Action&, const Action&) = default;
    friend auto operator<=>(const Action&, const Action&) = default;
};

/// True iff x restricted to the intervened nodes equals the assigned values.
inline bool action_matches(const Action& action, std::span<const Value> x) {
    for (std::size_t i = 0; i < action.nodes.size(); ++i) {
        if (x[static_cast<std::size_t>(action.nodes[i])] != action.values[i]) return false;
    }
    return true;
}

inline std::string to_string(const Action& action) {
    std::string out = "do(";
    for (std::size_t i = 0; i < action.nodes.size(); ++i) {
        if (i) out += ',';
        out += 'X';
        out += std::to_string(action.nodes[i]);
        out += '=';
        out += std::to_string(action.values[i]);
    }
    out += ')';
    return out;
}

}  // namespace cbandit
