#include "iotrisk/graph.hpp"

#include <utility>

#include "iotrisk/error.hpp"

namespace iotrisk {

std::string_view to_string(Layer layer) {
    switch (layer) {
    case Layer::perception: return "perception";
    case Layer::network: return "network";
    case Layer::application: return "application";
    }
    return "perception";
}

std::optional<Layer> parse_layer(std::string_view text) {
    if (text == "perception") return Layer::perception;
    if (text == "network") return Layer::network;
    if (text == "application") return Layer::application;
    return std::nullopt;
}

DependencyGraph DependencyGraph::build(std::vector<Component> components, std::vector<DependencyEdge> edges) {
    DependencyGraph graph;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& id = components[i].id;
        if (id.empty()) {
            throw Error(ErrorCode::InvalidArgument, "component id must not be empty");
        }
        if (!graph.ids_.emplace(id, i).second) {
            throw Error(ErrorCode::DuplicateComponentId, "duplicate component id '" + id + "'");
        }
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& edge : edges) {
        for (const auto* endpoint : {&edge.source, &edge.target}) {
            if (!graph.ids_.contains(*endpoint)) {
                throw Error(ErrorCode::DanglingEdgeEndpoint, "edge " + edge.source + "->" + edge.target +
                                                                 " references unknown component '" + *endpoint +
                                                                 "'");
            }
        }
        if (edge.source == edge.target) {
            throw Error(ErrorCode::SelfLoop, "self-loop on component '" + edge.source + "'");
        }
        if (!seen.emplace(edge.source, edge.target).second) {
            throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + edge.source + "->" + edge.target);
        }
    }

    graph.components_ = std::move(components);
    graph.edges_ = std::move(edges);
    graph.index();
    return graph;
}

void DependencyGraph::index() {
    successors_.assign(components_.size(), {});
    for (const auto& edge : edges_) {
        if (edge.configured) {
            successors_[ids_.at(edge.source)].push_back(ids_.at(edge.target));
        }
    }
}

std::optional<std::size_t> DependencyGraph::index_of(std::string_view id) const {
    auto it = ids_.find(std::string(id));
    if (it == ids_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t DependencyGraph::require_index(std::string_view id) const {
    auto index = index_of(id);
    if (!index) {
        throw Error(ErrorCode::UnknownComponent, "unknown component '" + std::string(id) + "'");
    }
    return *index;
}

const Component& DependencyGraph::component(std::string_view id) const {
    return components_[require_index(id)];
}

DependencyGraph DependencyGraph::with_edge_configured(std::string_view source, std::string_view target,
                                                      bool configured) const {
    DependencyGraph copy = *this;
    bool found = false;
    for (auto& edge : copy.edges_) {
        if (edge.source == source && edge.target == target) {
            edge.configured = configured;
            found = true;
        }
    }
    if (!found) {
        throw Error(ErrorCode::InvalidArgument,
                    "no edge " + std::string(source) + "->" + std::string(target));
    }
    copy.index();
    return copy;
}

std::vector<bool> reachable_mask(const DependencyGraph& graph, std::size_t origin) {
    std::vector<bool> reached(graph.size(), false);
    std::vector<std::size_t> stack{origin};
    reached[origin] = true;
    while (!stack.empty()) {
        auto node = stack.back();
        stack.pop_back();
        for (auto next : graph.configured_successors(node)) {
            if (!reached[next]) {
                reached[next] = true;
                stack.push_back(next);
            }
        }
    }
    return reached;
}

std::set<std::string> reachable_set(const DependencyGraph& graph, std::string_view origin) {
    auto mask = reachable_mask(graph, graph.require_index(origin));
    std::set<std::string> result;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            result.insert(graph.components()[i].id);
        }
    }
    return result;
}

bool is_tree(const DependencyGraph& graph) {
    const auto n = graph.size();
    std::vector<int> in_degree(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (auto u : graph.configured_successors(v)) {
            if (++in_degree[u] > 1) {
                return false;
            }
        }
    }
    // With in-degree <= 1 everywhere, the subgraph is a forest exactly when
    // walking down from every root covers all nodes; any leftover node sits
    // on a cycle.
    std::size_t visited = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (in_degree[v] == 0) {
            auto mask = reachable_mask(graph, v);
            for (bool hit : mask) {
                visited += hit ? 1 : 0;
            }
        }
    }
    return visited == n;
}

}  // namespace iotrisk
