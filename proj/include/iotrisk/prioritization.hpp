#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotrisk/graph.hpp"
#include "iotrisk/metrics.hpp"
#include "iotrisk/risk.hpp"

namespace iotrisk {

struct PolicyAttribute {
    std::string name;
    std::vector<std::string> values;

    bool operator==(const PolicyAttribute&) const = default;
};

// A decision node is a leaf when `attribute` is empty; otherwise it holds
// one branch per allowed value of `attribute`, in declaration order.
struct DecisionNode {
    struct Branch;

    std::string attribute;
    std::string action;
    std::vector<Branch> branches;

    bool is_leaf() const noexcept { return attribute.empty(); }

    static DecisionNode leaf(std::string action);
    static DecisionNode branch(std::string attribute, std::vector<Branch> branches);
};

struct DecisionNode::Branch {
    std::string value;
    DecisionNode child;
};

bool operator==(const DecisionNode& a, const DecisionNode& b);
inline bool operator==(const DecisionNode::Branch& a, const DecisionNode::Branch& b) {
    return a.value == b.value && a.child == b.child;
}

// Qualitative decision tree. Construction checks that every branch covers
// each allowed value of its attribute exactly once and that no attribute is
// tested twice on a root-to-leaf path; failures throw InvalidPolicy.
class DecisionTreePolicy {
public:
    DecisionTreePolicy(std::vector<PolicyAttribute> attributes, DecisionNode root);

    const std::vector<PolicyAttribute>& attributes() const noexcept { return attributes_; }
    const DecisionNode& root() const noexcept { return root_; }
    const PolicyAttribute* attribute(std::string_view name) const;

    // Distinct leaf actions in first-seen depth-first order.
    std::vector<std::string> actions() const;

    bool operator==(const DecisionTreePolicy&) const = default;

private:
    std::vector<PolicyAttribute> attributes_;
    DecisionNode root_;
};

// Attribute name -> qualitative value.
using TriageInput = std::map<std::string, std::string>;

// Throws UnknownAttributeValue for any input entry outside the policy's
// declarations and MissingAttribute when the path tests an absent attribute.
std::string evaluate_tree(const DecisionTreePolicy& policy, const TriageInput& input);

// Shipped policy (exploitation, automatable, technical_impact,
// mission_impact -> track, track_closely, attend, act).
const DecisionTreePolicy& default_policy();

// Descending score, ties by ascending id. Throws MissingScore.
std::vector<std::string> rank_scenarios(const RiskRegister& register_, const std::map<std::string, double>& scores);

enum class Treatment { mitigate, transfer, avoid, accept };

std::string_view to_string(Treatment treatment);
std::optional<Treatment> parse_treatment(std::string_view text);

struct TreatmentDecision {
    std::string scenario_id;
    Treatment treatment = Treatment::accept;
    std::string rationale;

    bool operator==(const TreatmentDecision&) const = default;
};

struct TreatmentPolicy {
    // Largest share of a scenario's consequence the organisation is willing
    // to expect to lose; risk below appetite * consequence is accepted.
    double appetite = 0.05;
    // Weight-3 scenarios whose cascade reaches this proportion are avoided.
    double avoid_proportion = 0.5;
    // Weight-1 scenarios below this proportion may be transferred.
    double transfer_proportion = 0.5;

    bool operator==(const TreatmentPolicy&) const = default;
};

// Whether the consequence can be covered by a third party such as an
// insurer. Safety and ethical harms cannot.
bool transferable(const RiskScenario& scenario) noexcept;

// Rules, first match wins:
//   weight 0, or risk below appetite * consequence   -> accept
//   weight 3 and proportion >= avoid_proportion       -> avoid
//   weight >= 2                                       -> mitigate
//   weight 1, transferable, proportion < transfer_proportion -> transfer
//   otherwise                                         -> mitigate
TreatmentDecision recommend_treatment(const RiskScenario& scenario, int weight, double proportion,
                                      const TreatmentPolicy& policy = {});

struct AssessmentSettings {
    DenominatorMode mode = DenominatorMode::all_components;
    bool include_self = true;
    double bump_threshold = 0.5;
    TreatmentPolicy treatment;

    bool operator==(const AssessmentSettings&) const = default;
};

struct TriageRow {
    std::string scenario_id;
    std::optional<std::size_t> rank;  // empty when the scenario is not active
    bool active = true;
    double score = 0.0;  // dependency-adjusted risk
    int weight = 0;      // exploitability weight after the dependency bump
    std::string action;  // decision-tree leaf; empty when not active
    TreatmentDecision treatment;

    bool operator==(const TriageRow&) const = default;
};

// Default-policy attribute values derived from the model; explicit entries in
// scenario.triage take precedence.
TriageInput derive_triage_input(const RiskScenario& scenario, const VulnerabilityRecord* vulnerability,
                                int weight, double proportion);

// Runs impact analysis, weighting, tree evaluation and treatment for every
// scenario. Active rows come first ordered by rank, then inactive rows by id.
// Throws DanglingReference when a scenario names an unknown component or
// vulnerability.
std::vector<TriageRow> triage_register(const DependencyGraph& graph, const RiskRegister& register_,
                                       const std::vector<VulnerabilityRecord>& vulnerabilities,
                                       const DecisionTreePolicy& policy, const AssessmentSettings& settings = {});

}  // namespace iotrisk
