#include <gtest/gtest.h>

#include <random>

#include "iotrisk/error.hpp"
#include "iotrisk/graph.hpp"
#include "oracles.hpp"

namespace iotrisk {
namespace {

using testing::five_node_graph;

ErrorCode build_error(std::vector<Component> components, std::vector<DependencyEdge> edges) {
    try {
        DependencyGraph::build(std::move(components), std::move(edges));
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected build to fail";
    return ErrorCode::InvalidArgument;
}

Component node(std::string id) { return {std::move(id), "", Layer::network, {}}; }

TEST(BuildGraph, MinimalGraph) {
    auto graph = DependencyGraph::build({node("A")}, {});
    EXPECT_EQ(graph.size(), 1u);
    EXPECT_TRUE(graph.edges().empty());
}

TEST(BuildGraph, SingleEdge) {
    auto graph = DependencyGraph::build({node("A"), node("B")}, {{"A", "B", true}});
    EXPECT_EQ(graph.size(), 2u);
    EXPECT_EQ(graph.configured_successors(0), std::vector<std::size_t>{1});
}

TEST(BuildGraph, RejectsInvalidInput) {
    EXPECT_EQ(build_error({node("A")}, {{"A", "A", true}}), ErrorCode::SelfLoop);
    EXPECT_EQ(build_error({node("A"), node("A")}, {}), ErrorCode::DuplicateComponentId);
    EXPECT_EQ(build_error({node("A")}, {{"A", "Z", true}}), ErrorCode::DanglingEdgeEndpoint);
    EXPECT_EQ(build_error({node("A")}, {{"Z", "A", true}}), ErrorCode::DanglingEdgeEndpoint);
    EXPECT_EQ(build_error({node("A"), node("B")}, {{"A", "B", true}, {"A", "B", false}}), ErrorCode::DuplicateEdge);
}

TEST(BuildGraph, EmptyListsYieldEmptyGraph) {
    auto graph = DependencyGraph::build({}, {});
    EXPECT_TRUE(graph.empty());
}

TEST(ReachableSet, FiveNodeGraph) {
    EXPECT_EQ(reachable_set(five_node_graph(), "D"), (std::set<std::string>{"A", "B", "D"}));
    EXPECT_EQ(reachable_set(five_node_graph(false), "D"), (std::set<std::string>{"D"}));
    EXPECT_EQ(reachable_set(five_node_graph(), "A"), (std::set<std::string>{"A"}));
}

TEST(ReachableSet, UnknownOrigin) {
    try {
        reachable_set(five_node_graph(), "Q");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownComponent);
    }
}

TEST(ReachableSet, TerminatesOnCycles) {
    auto graph = DependencyGraph::build({node("A"), node("B"), node("C")},
                                        {{"A", "B", true}, {"B", "C", true}, {"C", "A", true}});
    EXPECT_EQ(reachable_set(graph, "B").size(), 3u);
}

TEST(IsTree, Examples) {
    auto chain = DependencyGraph::build({node("A"), node("B"), node("C")}, {{"A", "B", true}, {"B", "C", true}});
    EXPECT_TRUE(is_tree(chain));
    auto join = DependencyGraph::build({node("A"), node("B"), node("C")}, {{"A", "B", true}, {"C", "B", true}});
    EXPECT_FALSE(is_tree(join));
    auto cycle = DependencyGraph::build({node("A"), node("B")}, {{"A", "B", true}, {"B", "A", true}});
    EXPECT_FALSE(is_tree(cycle));
}

TEST(IsTree, UnconfiguredEdgesDoNotCount) {
    auto join = DependencyGraph::build({node("A"), node("B"), node("C")}, {{"A", "B", true}, {"C", "B", false}});
    EXPECT_TRUE(is_tree(join));
}

// Properties over random digraphs, checked against Warshall closure.
TEST(ReachableSetProperty, MatchesClosureOracle) {
    std::mt19937_64 rng(20240601);
    for (int round = 0; round < 300; ++round) {
        std::size_t n = 1 + rng() % 12;
        auto graph = testing::random_digraph(n, 0.25, rng);
        auto reach = testing::closure(testing::configured_matrix(graph));
        for (std::size_t v = 0; v < n; ++v) {
            const auto& origin = graph.components()[v].id;
            auto set = reachable_set(graph, origin);
            EXPECT_TRUE(set.contains(origin));
            for (std::size_t u = 0; u < n; ++u) {
                EXPECT_EQ(set.contains(graph.components()[u].id), reach[v][u]);
            }
        }
    }
}

TEST(ReachableSetProperty, MonotoneInSwitches) {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 300; ++round) {
        auto graph = testing::random_digraph(2 + rng() % 10, 0.3, rng);
        if (graph.edges().empty()) continue;
        const auto& edge = graph.edges()[rng() % graph.edges().size()];
        auto on = graph.with_edge_configured(edge.source, edge.target, true);
        auto off = graph.with_edge_configured(edge.source, edge.target, false);
        for (const auto& c : graph.components()) {
            auto small = reachable_set(off, c.id);
            auto large = reachable_set(on, c.id);
            EXPECT_TRUE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
        }
    }
}

TEST(IsTreeProperty, RandomOutTreesAreTrees) {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 100; ++round) {
        EXPECT_TRUE(is_tree(testing::random_out_tree(1 + rng() % 12, rng)));
    }
}

TEST(BuildGraphProperty, TotalOverRandomInput) {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 500; ++round) {
        std::vector<Component> components;
        std::size_t n = rng() % 5;
        for (std::size_t i = 0; i < n; ++i) components.push_back(node(std::string(1, char('a' + rng() % 4))));
        std::vector<DependencyEdge> edges;
        std::size_t m = rng() % 5;
        for (std::size_t i = 0; i < m; ++i) {
            edges.push_back({std::string(1, char('a' + rng() % 5)), std::string(1, char('a' + rng() % 5)), true});
        }
        try {
            auto graph = DependencyGraph::build(components, edges);
            for (const auto& e : graph.edges()) {
                EXPECT_NE(e.source, e.target);
                EXPECT_TRUE(graph.contains(e.source));
                EXPECT_TRUE(graph.contains(e.target));
            }
        } catch (const Error&) {
            // structured failure is an acceptable outcome
        }
    }
}

}  // namespace
}  // namespace iotrisk
