#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "iotrisk/graph.hpp"

namespace iotrisk {

// How the worst-case dependency impact max(fd) is obtained.
enum class DenominatorMode {
    all_components,  // every component of the graph lies on the worst-case path
    max_over_nodes,  // the largest index actually attained in the graph
};

std::string_view to_string(DenominatorMode mode);
std::optional<DenominatorMode> parse_denominator_mode(std::string_view text);

// Exact non-negative fraction. A zero denominator is only produced together
// with a zero numerator and reads as 0.
class Ratio {
public:
    constexpr Ratio() = default;
    constexpr Ratio(std::uint64_t numerator, std::uint64_t denominator)
        : numerator_(numerator), denominator_(denominator) {}

    std::uint64_t numerator() const noexcept { return numerator_; }
    std::uint64_t denominator() const noexcept { return denominator_; }

    double value() const noexcept;
    bool is_zero() const noexcept { return numerator_ == 0; }
    bool is_one() const noexcept { return denominator_ != 0 && numerator_ == denominator_; }

    // Decimal rendering rounded half-up at `places` digits, e.g. "0.6000".
    std::string to_fixed(int places = 4) const;

    // Value comparisons (3/5 == 6/10).
    friend bool operator==(const Ratio& a, const Ratio& b) noexcept;
    friend bool operator<(const Ratio& a, const Ratio& b) noexcept;
    friend bool operator<=(const Ratio& a, const Ratio& b) noexcept { return !(b < a); }

private:
    std::uint64_t numerator_ = 0;
    std::uint64_t denominator_ = 1;
};

struct ImpactReport {
    std::string origin;               // seed id, or seeds joined with ',' for a union
    std::vector<std::string> seeds;   // sorted
    std::set<std::string> impacted;
    std::uint64_t fd = 0;             // |impacted|
    std::uint64_t denominator = 0;    // max(fd) under the chosen mode
    std::map<Layer, std::uint64_t> per_layer_counts;

    Ratio proportion() const noexcept { return Ratio(fd, denominator); }

    bool operator==(const ImpactReport&) const = default;
};

// Switch function: 1 when the connection is configured, 0 otherwise.
int switch_state(const DependencyEdge& edge) noexcept;

// Number of components whose function is impacted when `origin` is
// compromised (reachable set size, minus one if !include_self). Cycles and
// shared descendants count each component once.
std::uint64_t functional_dependency_index(const DependencyGraph& graph, std::string_view origin,
                                          bool include_self = true);

// Closed recursion fd(v) = 1 + sum of fd(u) over configured children u.
// Only defined on forests; throws NotATree otherwise.
std::uint64_t tree_dependency_index(const DependencyGraph& graph, std::string_view origin);

// Throws EmptyGraph for a graph with no components. With include_self=false
// the origin can never count itself, so all_components yields N - 1.
std::uint64_t worst_case_denominator(const DependencyGraph& graph, DenominatorMode mode,
                                     bool include_self = true);

ImpactReport impact_proportion(const DependencyGraph& graph, std::string_view origin,
                               DenominatorMode mode = DenominatorMode::all_components,
                               bool include_self = true);

// Cascade from a set of simultaneously compromised components.
// Throws EmptySeedSet or UnknownComponent.
ImpactReport simulate_exploit(const DependencyGraph& graph, const std::vector<std::string>& seeds,
                              DenominatorMode mode = DenominatorMode::all_components,
                              bool include_self = true);

// impact_proportion for every component, in graph order, sharing one
// denominator computation.
std::vector<ImpactReport> impact_table(const DependencyGraph& graph,
                                       DenominatorMode mode = DenominatorMode::all_components,
                                       bool include_self = true);

}  // namespace iotrisk
