#include "iotrisk/metrics.hpp"

#include <algorithm>
#include <functional>

#include "iotrisk/error.hpp"

namespace iotrisk {

std::string_view to_string(DenominatorMode mode) {
    return mode == DenominatorMode::all_components ? "all_components" : "max_over_nodes";
}

std::optional<DenominatorMode> parse_denominator_mode(std::string_view text) {
    if (text == "all_components") return DenominatorMode::all_components;
    if (text == "max_over_nodes") return DenominatorMode::max_over_nodes;
    return std::nullopt;
}

double Ratio::value() const noexcept {
    if (denominator_ == 0) {
        return 0.0;
    }
    return static_cast<double>(numerator_) / static_cast<double>(denominator_);
}

std::string Ratio::to_fixed(int places) const {
    std::uint64_t scale = 1;
    for (int i = 0; i < places; ++i) {
        scale *= 10;
    }
    std::uint64_t scaled = 0;
    if (denominator_ != 0) {
        // round(num * scale / den), half up
        scaled = (2 * numerator_ * scale + denominator_) / (2 * denominator_);
    }
    std::string whole = std::to_string(scaled / scale);
    if (places <= 0) {
        return whole;
    }
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return whole + "." + frac;
}

__extension__ using Wide = unsigned __int128;

bool operator==(const Ratio& a, const Ratio& b) noexcept {
    if (a.denominator_ == 0 || b.denominator_ == 0) {
        return a.is_zero() && b.is_zero();
    }
    return static_cast<Wide>(a.numerator_) * b.denominator_ ==
           static_cast<Wide>(b.numerator_) * a.denominator_;
}

bool operator<(const Ratio& a, const Ratio& b) noexcept {
    if (a.denominator_ == 0 || b.denominator_ == 0) {
        return a.value() < b.value();
    }
    return static_cast<Wide>(a.numerator_) * b.denominator_ <
           static_cast<Wide>(b.numerator_) * a.denominator_;
}

int switch_state(const DependencyEdge& edge) noexcept { return edge.configured ? 1 : 0; }

namespace {

std::uint64_t count(const std::vector<bool>& mask) {
    return static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), true));
}

ImpactReport make_report(const DependencyGraph& graph, std::vector<std::size_t> seeds,
                         std::uint64_t denominator, bool include_self) {
    std::vector<bool> impacted(graph.size(), false);
    for (auto seed : seeds) {
        auto reach = reachable_mask(graph, seed);
        if (!include_self) {
            // Another seed's cascade may still reach this seed.
            reach[seed] = false;
        }
        for (std::size_t i = 0; i < reach.size(); ++i) {
            impacted[i] = impacted[i] || reach[i];
        }
    }

    ImpactReport report;
    std::sort(seeds.begin(), seeds.end(), [&](auto a, auto b) {
        return graph.components()[a].id < graph.components()[b].id;
    });
    for (auto seed : seeds) {
        const auto& id = graph.components()[seed].id;
        if (!report.origin.empty()) {
            report.origin += ',';
        }
        report.origin += id;
        report.seeds.push_back(id);
    }
    report.per_layer_counts = {{Layer::perception, 0}, {Layer::network, 0}, {Layer::application, 0}};
    for (std::size_t i = 0; i < impacted.size(); ++i) {
        if (impacted[i]) {
            const auto& component = graph.components()[i];
            report.impacted.insert(component.id);
            ++report.per_layer_counts[component.layer];
        }
    }
    report.fd = report.impacted.size();
    report.denominator = denominator;
    return report;
}

}  // namespace

std::uint64_t functional_dependency_index(const DependencyGraph& graph, std::string_view origin,
                                          bool include_self) {
    auto reached = count(reachable_mask(graph, graph.require_index(origin)));
    return include_self ? reached : reached - 1;
}

std::uint64_t tree_dependency_index(const DependencyGraph& graph, std::string_view origin) {
    auto root = graph.require_index(origin);
    if (!is_tree(graph)) {
        throw Error(ErrorCode::NotATree, "the closed recursion requires a forest of configured edges");
    }
    std::function<std::uint64_t(std::size_t)> fd = [&](std::size_t v) -> std::uint64_t {
        std::uint64_t total = 1;
        for (auto u : graph.configured_successors(v)) {
            total += fd(u);
        }
        return total;
    };
    return fd(root);
}

std::uint64_t worst_case_denominator(const DependencyGraph& graph, DenominatorMode mode, bool include_self) {
    if (graph.empty()) {
        throw Error(ErrorCode::EmptyGraph, "graph has no components");
    }
    const std::uint64_t self = include_self ? 0 : 1;
    if (mode == DenominatorMode::all_components) {
        return graph.size() - self;
    }
    std::uint64_t best = 0;
    for (std::size_t v = 0; v < graph.size(); ++v) {
        best = std::max(best, count(reachable_mask(graph, v)));
    }
    return best - self;
}

ImpactReport impact_proportion(const DependencyGraph& graph, std::string_view origin, DenominatorMode mode,
                               bool include_self) {
    return simulate_exploit(graph, {std::string(origin)}, mode, include_self);
}

ImpactReport simulate_exploit(const DependencyGraph& graph, const std::vector<std::string>& seeds,
                              DenominatorMode mode, bool include_self) {
    if (seeds.empty()) {
        throw Error(ErrorCode::EmptySeedSet, "at least one seed component is required");
    }
    std::vector<std::size_t> indices;
    for (const auto& seed : seeds) {
        indices.push_back(graph.require_index(seed));
    }
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    auto denominator = worst_case_denominator(graph, mode, include_self);
    return make_report(graph, std::move(indices), denominator, include_self);
}

std::vector<ImpactReport> impact_table(const DependencyGraph& graph, DenominatorMode mode, bool include_self) {
    std::vector<ImpactReport> table;
    if (graph.empty()) {
        return table;
    }
    auto denominator = worst_case_denominator(graph, mode, include_self);
    table.reserve(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) {
        table.push_back(make_report(graph, {v}, denominator, include_self));
    }
    return table;
}

}  // namespace iotrisk
