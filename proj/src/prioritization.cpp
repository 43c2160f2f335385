#include "iotrisk/prioritization.hpp"

#include <algorithm>
#include <set>

#include "iotrisk/error.hpp"

namespace iotrisk {

DecisionNode DecisionNode::leaf(std::string action) {
    DecisionNode node;
    node.action = std::move(action);
    return node;
}

DecisionNode DecisionNode::branch(std::string attribute, std::vector<Branch> branches) {
    DecisionNode node;
    node.attribute = std::move(attribute);
    node.branches = std::move(branches);
    return node;
}

bool operator==(const DecisionNode& a, const DecisionNode& b) {
    return a.attribute == b.attribute && a.action == b.action && a.branches == b.branches;
}

namespace {

void check_node(const std::vector<PolicyAttribute>& attributes, DecisionNode& node, std::set<std::string>& tested,
                const std::string& path) {
    if (node.is_leaf()) {
        if (node.action.empty()) {
            throw Error(ErrorCode::InvalidPolicy, "leaf without an action", path);
        }
        if (!node.branches.empty()) {
            throw Error(ErrorCode::InvalidPolicy, "leaf must not have branches", path);
        }
        return;
    }
    if (!node.action.empty()) {
        throw Error(ErrorCode::InvalidPolicy, "branch node must not carry an action", path);
    }
    auto decl = std::find_if(attributes.begin(), attributes.end(),
                             [&](const auto& a) { return a.name == node.attribute; });
    if (decl == attributes.end()) {
        throw Error(ErrorCode::InvalidPolicy, "undeclared attribute '" + node.attribute + "'", path);
    }
    if (!tested.insert(node.attribute).second) {
        throw Error(ErrorCode::InvalidPolicy, "attribute '" + node.attribute + "' tested twice on one path", path);
    }

    std::vector<DecisionNode::Branch> ordered;
    for (const auto& value : decl->values) {
        auto count = std::count_if(node.branches.begin(), node.branches.end(),
                                   [&](const auto& b) { return b.value == value; });
        if (count != 1) {
            throw Error(ErrorCode::InvalidPolicy,
                        "attribute '" + node.attribute + "' must branch exactly once on '" + value + "'", path);
        }
    }
    if (node.branches.size() != decl->values.size()) {
        throw Error(ErrorCode::InvalidPolicy, "branch on undeclared value of '" + node.attribute + "'", path);
    }
    // Canonical order: declaration order of the attribute's values.
    for (const auto& value : decl->values) {
        auto it = std::find_if(node.branches.begin(), node.branches.end(),
                               [&](const auto& b) { return b.value == value; });
        ordered.push_back(std::move(*it));
    }
    node.branches = std::move(ordered);
    for (auto& branch : node.branches) {
        check_node(attributes, branch.child, tested, path + "/" + node.attribute + "=" + branch.value);
    }
    tested.erase(node.attribute);
}

void collect_actions(const DecisionNode& node, std::vector<std::string>& out) {
    if (node.is_leaf()) {
        if (std::find(out.begin(), out.end(), node.action) == out.end()) {
            out.push_back(node.action);
        }
        return;
    }
    for (const auto& branch : node.branches) {
        collect_actions(branch.child, out);
    }
}

}  // namespace

DecisionTreePolicy::DecisionTreePolicy(std::vector<PolicyAttribute> attributes, DecisionNode root)
    : attributes_(std::move(attributes)), root_(std::move(root)) {
    std::set<std::string> names;
    for (const auto& attribute : attributes_) {
        if (attribute.name.empty() || !names.insert(attribute.name).second) {
            throw Error(ErrorCode::InvalidPolicy, "attribute names must be non-empty and unique");
        }
        std::set<std::string> values(attribute.values.begin(), attribute.values.end());
        if (attribute.values.empty() || values.size() != attribute.values.size() || values.contains("")) {
            throw Error(ErrorCode::InvalidPolicy,
                        "attribute '" + attribute.name + "' needs distinct, non-empty values");
        }
    }
    std::set<std::string> tested;
    check_node(attributes_, root_, tested, "root");
}

const PolicyAttribute* DecisionTreePolicy::attribute(std::string_view name) const {
    auto it = std::find_if(attributes_.begin(), attributes_.end(), [&](const auto& a) { return a.name == name; });
    return it == attributes_.end() ? nullptr : &*it;
}

std::vector<std::string> DecisionTreePolicy::actions() const {
    std::vector<std::string> out;
    collect_actions(root_, out);
    return out;
}

std::string evaluate_tree(const DecisionTreePolicy& policy, const TriageInput& input) {
    for (const auto& [name, value] : input) {
        const auto* decl = policy.attribute(name);
        if (decl == nullptr || std::find(decl->values.begin(), decl->values.end(), value) == decl->values.end()) {
            throw Error(ErrorCode::UnknownAttributeValue, "'" + name + "=" + value + "' is not declared by the policy");
        }
    }
    const DecisionNode* node = &policy.root();
    while (!node->is_leaf()) {
        auto it = input.find(node->attribute);
        if (it == input.end()) {
            throw Error(ErrorCode::MissingAttribute, "no value for attribute '" + node->attribute + "'");
        }
        auto branch = std::find_if(node->branches.begin(), node->branches.end(),
                                   [&](const auto& b) { return b.value == it->second; });
        node = &branch->child;
    }
    return node->action;
}

std::vector<std::string> rank_scenarios(const RiskRegister& register_, const std::map<std::string, double>& scores) {
    std::vector<std::pair<double, std::string>> keyed;
    keyed.reserve(register_.size());
    for (const auto& scenario : register_.scenarios()) {
        auto it = scores.find(scenario.id);
        if (it == scores.end()) {
            throw Error(ErrorCode::MissingScore, "no score for scenario '" + scenario.id + "'");
        }
        keyed.emplace_back(it->second, scenario.id);
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return a.second < b.second;
    });
    std::vector<std::string> ids;
    ids.reserve(keyed.size());
    for (auto& entry : keyed) {
        ids.push_back(std::move(entry.second));
    }
    return ids;
}

std::string_view to_string(Treatment treatment) {
    switch (treatment) {
    case Treatment::mitigate: return "mitigate";
    case Treatment::transfer: return "transfer";
    case Treatment::avoid: return "avoid";
    case Treatment::accept: return "accept";
    }
    return "accept";
}

std::optional<Treatment> parse_treatment(std::string_view text) {
    for (auto t : {Treatment::mitigate, Treatment::transfer, Treatment::avoid, Treatment::accept}) {
        if (to_string(t) == text) {
            return t;
        }
    }
    return std::nullopt;
}

bool transferable(const RiskScenario& scenario) noexcept {
    return scenario.consequence > 0.0 && scenario.category != RiskCategory::safety &&
           scenario.category != RiskCategory::ethical;
}

TreatmentDecision recommend_treatment(const RiskScenario& scenario, int weight, double proportion,
                                      const TreatmentPolicy& policy) {
    TreatmentDecision decision{scenario.id, Treatment::accept, {}};
    const double risk = scenario_risk(scenario);
    const double tolerance = policy.appetite * scenario.consequence;
    if (weight <= 0) {
        decision.rationale = "exploitability weight 0: within risk appetite";
    } else if (risk < tolerance) {
        decision.rationale = "expected loss below appetite tolerance";
    } else if (weight >= 3 && proportion >= policy.avoid_proportion) {
        decision.treatment = Treatment::avoid;
        decision.rationale = "weight 3 with cascade proportion at or above avoid threshold";
    } else if (weight >= 2) {
        decision.treatment = Treatment::mitigate;
        decision.rationale = "weight " + std::to_string(weight) + ": proactive mitigation";
    } else if (transferable(scenario) && proportion < policy.transfer_proportion) {
        decision.treatment = Treatment::transfer;
        decision.rationale = "weight 1 with transferable monetary consequence and contained cascade";
    } else {
        decision.treatment = Treatment::mitigate;
        decision.rationale = "weight 1 with non-transferable consequence or wide cascade";
    }
    return decision;
}

TriageInput derive_triage_input(const RiskScenario& scenario, const VulnerabilityRecord* vulnerability,
                                int weight, double proportion) {
    TriageInput input;
    if (vulnerability != nullptr) {
        const auto& f = vulnerability->factors;
        switch (f.public_exploit) {
        case PublicExploit::none: input["exploitation"] = "none"; break;
        case PublicExploit::proof_of_concept: input["exploitation"] = "poc"; break;
        case PublicExploit::weaponized: input["exploitation"] = "active"; break;
        }
        const bool network_reachable =
            f.attack_vector == AttackVector::remote || f.attack_vector == AttackVector::adjacent;
        input["automatable"] = network_reachable && f.access_complexity == AccessComplexity::low &&
                                       f.required_privileges == RequiredPrivileges::none
                                   ? "yes"
                                   : "no";
    } else {
        input["exploitation"] = "none";
        input["automatable"] = "no";
    }
    input["technical_impact"] = weight >= 2 ? "total" : "partial";
    if (proportion * 3.0 >= 2.0) {
        input["mission_impact"] = "high";
    } else if (proportion * 3.0 >= 1.0) {
        input["mission_impact"] = "medium";
    } else {
        input["mission_impact"] = "low";
    }
    for (const auto& [name, value] : scenario.triage) {
        input[name] = value;
    }
    return input;
}

std::vector<TriageRow> triage_register(const DependencyGraph& graph, const RiskRegister& register_,
                                       const std::vector<VulnerabilityRecord>& vulnerabilities,
                                       const DecisionTreePolicy& policy, const AssessmentSettings& settings) {
    auto find_vulnerability = [&](std::string_view id) -> const VulnerabilityRecord* {
        auto it = std::find_if(vulnerabilities.begin(), vulnerabilities.end(),
                               [&](const auto& v) { return v.id == id; });
        return it == vulnerabilities.end() ? nullptr : &*it;
    };

    std::vector<TriageRow> rows;
    std::map<std::string, double> scores;
    std::vector<RiskScenario> active_scenarios;

    for (const auto& scenario : register_.scenarios()) {
        if (scenario.origin_component && !graph.contains(*scenario.origin_component)) {
            throw Error(ErrorCode::DanglingReference,
                        "scenario '" + scenario.id + "' names unknown component '" + *scenario.origin_component + "'");
        }
        const VulnerabilityRecord* vulnerability = nullptr;
        if (scenario.vulnerability_id) {
            vulnerability = find_vulnerability(*scenario.vulnerability_id);
            if (vulnerability == nullptr) {
                throw Error(ErrorCode::DanglingReference, "scenario '" + scenario.id +
                                                              "' names unknown vulnerability '" +
                                                              *scenario.vulnerability_id + "'");
            }
        }

        TriageRow row;
        row.scenario_id = scenario.id;

        // Without an origin there is no cascade to scale by; treat the
        // scenario as affecting everything.
        double proportion = 1.0;
        double score = scenario_risk(scenario);
        if (scenario.origin_component) {
            auto report = impact_proportion(graph, *scenario.origin_component, settings.mode, settings.include_self);
            proportion = report.proportion().value();
            score = dependency_adjusted_risk(scenario, report);
        }

        if (vulnerability != nullptr) {
            row.active = scenario.origin_component ? vulnerability->active_on(*scenario.origin_component)
                                                   : vulnerability->active;
        }
        if (!row.active) {
            row.weight = 0;
            row.score = 0.0;
            row.treatment = {scenario.id, Treatment::accept,
                             "vulnerability '" + vulnerability->id + "' not exploitable on this component"};
            rows.push_back(std::move(row));
            continue;
        }

        int base_weight = 0;
        if (vulnerability != nullptr) {
            base_weight = vulnerability->weight;
        } else if (scenario.origin_component) {
            for (const auto& id : graph.component(*scenario.origin_component).vulnerability_ids) {
                const auto* candidate = find_vulnerability(id);
                if (candidate != nullptr && candidate->active_on(*scenario.origin_component)) {
                    base_weight = std::max(base_weight, candidate->weight);
                }
            }
        }

        row.weight = dependency_bump(base_weight, proportion, settings.bump_threshold);
        row.score = score;
        row.action = evaluate_tree(policy, derive_triage_input(scenario, vulnerability, row.weight, proportion));
        row.treatment = recommend_treatment(scenario, row.weight, proportion, settings.treatment);
        scores[scenario.id] = score;
        active_scenarios.push_back(scenario);
        rows.push_back(std::move(row));
    }

    auto order = rank_scenarios(RiskRegister(std::move(active_scenarios)), scores);
    std::map<std::string, std::size_t> ranks;
    for (std::size_t i = 0; i < order.size(); ++i) {
        ranks[order[i]] = i + 1;
    }
    for (auto& row : rows) {
        if (row.active) {
            row.rank = ranks.at(row.scenario_id);
        }
    }
    std::sort(rows.begin(), rows.end(), [](const TriageRow& a, const TriageRow& b) {
        if (a.active != b.active) {
            return a.active;
        }
        if (a.active) {
            return *a.rank < *b.rank;
        }
        return a.scenario_id < b.scenario_id;
    });
    return rows;
}

}  // namespace iotrisk
