#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotrisk/graph.hpp"
#include "iotrisk/prioritization.hpp"
#include "iotrisk/risk.hpp"

namespace iotrisk {

// Everything one assessment needs, loaded from a single JSON document.
struct AssessmentModel {
    DependencyGraph graph;
    std::vector<VulnerabilityRecord> vulnerabilities;
    RiskRegister scenarios;
    std::optional<DecisionTreePolicy> policy;
    std::optional<WeightRubric> rubric;
    AssessmentSettings settings;

    const DecisionTreePolicy& effective_policy() const { return policy ? *policy : default_policy(); }
    const WeightRubric& effective_rubric() const;
    const VulnerabilityRecord* find_vulnerability(std::string_view id) const;

    bool operator==(const AssessmentModel&) const = default;
};

// Parses and validates a model document. Throws Error with SyntaxError
// (location "line L, column C"), SchemaError or DanglingReference (location
// is a JSON pointer). Vulnerability weights are derived on load.
AssessmentModel parse_model(std::string_view document);

// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_model(const AssessmentModel& model);

DecisionTreePolicy parse_policy(std::string_view document);
std::string serialize_policy(const DecisionTreePolicy& policy);

struct NvdImport {
    std::vector<VulnerabilityRecord> records;
    std::vector<std::string> warnings;
};

// Reads [{id, description, cvss_vector, public_exploit?, patch_state?}].
// AV/AC/PR drive the factors; other CVSS v3 metrics are skipped with a
// warning. Throws SyntaxError, SchemaError or UnknownMetric.
NvdImport parse_nvd_subset(std::string_view document, const WeightRubric& rubric = {});

// Maps a CVSS v3 vector onto access complexity, privileges and attack vector
// of `factors`; returns warnings for skipped metrics.
std::vector<std::string> apply_cvss_vector(std::string_view vector, ExploitabilityFactors& factors);

// Replaces records with matching ids and appends new ones.
AssessmentModel merge_vulnerabilities(const AssessmentModel& model, const std::vector<VulnerabilityRecord>& records);

enum class VexStatus { not_affected, affected, fixed, under_investigation };

std::string_view to_string(VexStatus status);
std::optional<VexStatus> parse_vex_status(std::string_view text);

struct VexStatement {
    std::string vulnerability_id;
    std::string product_id;
    VexStatus status = VexStatus::under_investigation;
    std::optional<std::string> justification;

    bool operator==(const VexStatement&) const = default;
};

std::vector<VexStatement> parse_vex(std::string_view document);

struct VexOutcome {
    AssessmentModel model;
    std::vector<VexStatement> unmatched;
};

// not_affected and fixed deactivate the vulnerability on the named product;
// affected and under_investigation leave the model untouched. Statements
// naming an unknown vulnerability or component are returned as unmatched.
VexOutcome apply_vex(const AssessmentModel& model, const std::vector<VexStatement>& statements);

}  // namespace iotrisk
