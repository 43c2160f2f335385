#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace iotrisk {

// IoT architecture layer a component lives on.
enum class Layer { perception, network, application };

std::string_view to_string(Layer layer);
std::optional<Layer> parse_layer(std::string_view text);

struct Component {
    std::string id;
    std::string name;
    Layer layer = Layer::perception;
    std::vector<std::string> vulnerability_ids;

    bool operator==(const Component&) const = default;
};

// Directed dependency: a failure of `source` flows to `target` when the
// connection is configured.
struct DependencyEdge {
    std::string source;
    std::string target;
    bool configured = true;

    bool operator==(const DependencyEdge&) const = default;
};

// Immutable, validated dependency graph. Construct through build().
class DependencyGraph {
public:
    DependencyGraph() = default;

    // Throws Error with DuplicateComponentId, DanglingEdgeEndpoint, SelfLoop
    // or DuplicateEdge. Never returns a partially valid graph.
    static DependencyGraph build(std::vector<Component> components, std::vector<DependencyEdge> edges);

    std::size_t size() const noexcept { return components_.size(); }
    bool empty() const noexcept { return components_.empty(); }

    const std::vector<Component>& components() const noexcept { return components_; }
    const std::vector<DependencyEdge>& edges() const noexcept { return edges_; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    bool contains(std::string_view id) const { return index_of(id).has_value(); }

    // Throws UnknownComponent.
    std::size_t require_index(std::string_view id) const;
    const Component& component(std::string_view id) const;

    // Indices of targets over configured edges leaving `node`.
    const std::vector<std::size_t>& configured_successors(std::size_t node) const {
        return successors_[node];
    }

    // Copy of this graph with the switch of edge (source, target) set.
    // Throws InvalidArgument if no such edge exists.
    DependencyGraph with_edge_configured(std::string_view source, std::string_view target,
                                         bool configured) const;

    bool operator==(const DependencyGraph& other) const {
        return components_ == other.components_ && edges_ == other.edges_;
    }

private:
    void index();

    std::vector<Component> components_;
    std::vector<DependencyEdge> edges_;
    std::unordered_map<std::string, std::size_t> ids_;
    std::vector<std::vector<std::size_t>> successors_;
};

// Components reachable from `origin` over configured edges, origin included.
// Throws UnknownComponent.
std::set<std::string> reachable_set(const DependencyGraph& graph, std::string_view origin);

// Index form of reachable_set; result[i] is true when node i is reached.
std::vector<bool> reachable_mask(const DependencyGraph& graph, std::size_t origin);

// True iff the configured subgraph is a forest of out-trees: at most one
// configured parent per node and no configured cycle.
bool is_tree(const DependencyGraph& graph);

}  // namespace iotrisk
