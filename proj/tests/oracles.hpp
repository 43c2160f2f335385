#pragma once

// Independent reference computations and random input generators shared by
// the unit and acceptance suites. Nothing here calls into the traversal code
// under test.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iotrisk/graph.hpp"

namespace iotrisk::testing {

inline std::string node_name(std::size_t i) { return "n" + std::to_string(i); }

// Adjacency matrix of configured edges, indexed like graph.components().
inline std::vector<std::vector<bool>> configured_matrix(const DependencyGraph& graph) {
    const auto n = graph.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (const auto& e : graph.edges()) {
        if (e.configured) {
            std::size_t s = 0, t = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (graph.components()[i].id == e.source) s = i;
                if (graph.components()[i].id == e.target) t = i;
            }
            m[s][t] = true;
        }
    }
    return m;
}

// Reflexive transitive closure by Warshall's algorithm.
inline std::vector<std::vector<bool>> closure(std::vector<std::vector<bool>> m) {
    const auto n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!m[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (m[k][j]) m[i][j] = true;
            }
        }
    }
    return m;
}

// Reachable-component count (origin included) for every node.
inline std::vector<std::uint64_t> brute_force_fd(const DependencyGraph& graph) {
    auto reach = closure(configured_matrix(graph));
    std::vector<std::uint64_t> fd;
    for (const auto& row : reach) {
        std::uint64_t count = 0;
        for (bool b : row) count += b ? 1 : 0;
        fd.push_back(count);
    }
    return fd;
}

inline std::vector<Component> make_components(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> layer(0, 2);
    std::vector<Component> components;
    for (std::size_t i = 0; i < n; ++i) {
        components.push_back({node_name(i), "node " + std::to_string(i), static_cast<Layer>(layer(rng)), {}});
    }
    return components;
}

// Random out-forest: every node except roots gets one parent with a smaller
// index; some edges are left unconfigured.
inline DependencyGraph random_out_tree(std::size_t n, std::mt19937_64& rng) {
    std::vector<DependencyEdge> edges;
    std::bernoulli_distribution has_parent(0.85);
    std::bernoulli_distribution configured(0.8);
    for (std::size_t v = 1; v < n; ++v) {
        if (!has_parent(rng)) continue;
        std::uniform_int_distribution<std::size_t> parent(0, v - 1);
        edges.push_back({node_name(parent(rng)), node_name(v), configured(rng)});
    }
    // Shuffle node order so indices do not encode the topology.
    auto components = make_components(n, rng);
    std::shuffle(components.begin(), components.end(), rng);
    return DependencyGraph::build(std::move(components), std::move(edges));
}

// Random digraph (cycles allowed) with random switches.
inline DependencyGraph random_digraph(std::size_t n, double density, std::mt19937_64& rng) {
    std::vector<DependencyEdge> edges;
    std::bernoulli_distribution present(density);
    std::bernoulli_distribution configured(0.5);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (s != t && present(rng)) {
                edges.push_back({node_name(s), node_name(t), configured(rng)});
            }
        }
    }
    return DependencyGraph::build(make_components(n, rng), std::move(edges));
}

// The five-component reference graph: D->B, E->B, B->A, C->A.
inline DependencyGraph five_node_graph(bool d_to_b_configured = true) {
    std::vector<Component> components{{"A", "HMI", Layer::application, {}},
                                      {"B", "PLC", Layer::network, {}},
                                      {"C", "Switch", Layer::network, {}},
                                      {"D", "Sensor", Layer::perception, {}},
                                      {"E", "Actuator", Layer::perception, {}}};
    std::vector<DependencyEdge> edges{
        {"D", "B", d_to_b_configured}, {"E", "B", true}, {"B", "A", true}, {"C", "A", true}};
    return DependencyGraph::build(std::move(components), std::move(edges));
}

inline DependencyGraph path_graph(std::size_t n) {
    std::vector<Component> components;
    std::vector<DependencyEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        components.push_back({"v" + std::to_string(i + 1), "", Layer::network, {}});
        if (i > 0) {
            edges.push_back({"v" + std::to_string(i), "v" + std::to_string(i + 1), true});
        }
    }
    return DependencyGraph::build(std::move(components), std::move(edges));
}

}  // namespace iotrisk::testing
