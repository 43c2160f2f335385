#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iotrisk/metrics.hpp"
#include "iotrisk/prioritization.hpp"
#include "iotrisk/risk.hpp"

namespace iotrisk {

enum class ReportFormat { text, structured };

std::optional<ReportFormat> parse_report_format(std::string_view text);

struct AssessmentReport {
    // Which sections the report carries; absent sections are omitted from
    // both output formats.
    bool has_impacts = true;
    bool has_scenarios = true;
    bool has_loss = true;

    DenominatorMode mode = DenominatorMode::all_components;
    bool include_self = true;
    std::vector<ImpactReport> impacts;
    std::vector<TriageRow> scenarios;
    std::optional<LossDistributionSummary> loss;

    bool operator==(const AssessmentReport&) const = default;
};

// Text: aligned tables with proportions at four decimals.
// Structured: canonical JSON (sorted keys, two-space indent).
std::string write_report(const AssessmentReport& report, ReportFormat format);

// Reads the structured form back. Derived fields (proportion text) are
// recomputed rather than trusted. Throws SyntaxError or SchemaError.
AssessmentReport parse_report(std::string_view document);

}  // namespace iotrisk
