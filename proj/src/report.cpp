#include "iotrisk/report.hpp"

#include <iomanip>
#include <sstream>

#include "iotrisk/error.hpp"
#include "json_util.hpp"

namespace iotrisk {

using detail::check_keys;
using detail::child_path;
using detail::json;
using detail::read_bool;
using detail::read_number;
using detail::read_string;
using detail::read_unsigned;
using detail::require;
using detail::schema_error;

std::optional<ReportFormat> parse_report_format(std::string_view text) {
    if (text == "text") return ReportFormat::text;
    if (text == "structured") return ReportFormat::structured;
    return std::nullopt;
}

namespace {

std::string join(const auto& items, std::string_view sep) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) {
            out += sep;
        }
        out += item;
    }
    return out;
}

std::string format_amount(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << value;
    return out.str();
}

json impact_to_json(const ImpactReport& r) {
    json layers = json::object();
    for (const auto& [layer, count] : r.per_layer_counts) {
        layers[std::string(to_string(layer))] = count;
    }
    return json{{"origin", r.origin},
                {"seeds", r.seeds},
                {"impacted", r.impacted},
                {"fd", r.fd},
                {"denominator", r.denominator},
                {"proportion", r.proportion().to_fixed(4)},
                {"per_layer_counts", std::move(layers)}};
}

json row_to_json(const TriageRow& row) {
    return json{{"scenario_id", row.scenario_id},
                {"rank", row.rank ? json(*row.rank) : json(nullptr)},
                {"active", row.active},
                {"score", row.score},
                {"weight", row.weight},
                {"action", row.action},
                {"treatment", to_string(row.treatment.treatment)},
                {"rationale", row.treatment.rationale}};
}

json loss_to_json(const LossDistributionSummary& s) {
    return json{{"trials", s.trials},       {"seed", s.seed},         {"alpha", s.alpha},
                {"mean_loss", s.mean_loss}, {"value_at_risk", s.value_at_risk}, {"min_loss", s.min_loss},
                {"max_loss", s.max_loss}};
}

std::string write_structured(const AssessmentReport& report) {
    json impacts = json::array();
    for (const auto& r : report.impacts) {
        impacts.push_back(impact_to_json(r));
    }
    json rows = json::array();
    for (const auto& row : report.scenarios) {
        rows.push_back(row_to_json(row));
    }
    json root{{"settings", {{"denominator_mode", to_string(report.mode)}, {"include_self", report.include_self}}}};
    if (report.has_impacts) {
        root["impacts"] = std::move(impacts);
    }
    if (report.has_scenarios) {
        root["scenarios"] = std::move(rows);
    }
    if (report.has_loss) {
        root["loss"] = report.loss ? loss_to_json(*report.loss) : json(nullptr);
    }
    return root.dump(2) + "\n";
}

void write_impacts(std::ostream& out, const AssessmentReport& report) {
    out << "Dependency impact (denominator: " << to_string(report.mode)
        << ", include self: " << (report.include_self ? "true" : "false") << ")\n";
    if (report.impacts.empty()) {
        out << "  (no components)\n";
        return;
    }
    out << "  " << std::left << std::setw(16) << "origin" << std::right << std::setw(5) << "fd" << std::setw(6)
        << "max" << std::setw(12) << "proportion" << std::setw(5) << "PL" << std::setw(5) << "NL" << std::setw(5)
        << "AL" << "  impacted\n";
    for (const auto& r : report.impacts) {
        auto layer = [&](Layer l) {
            auto it = r.per_layer_counts.find(l);
            return it == r.per_layer_counts.end() ? 0 : it->second;
        };
        out << "  " << std::left << std::setw(16) << r.origin << std::right << std::setw(5) << r.fd << std::setw(6)
            << r.denominator << std::setw(12) << r.proportion().to_fixed(4) << std::setw(5)
            << layer(Layer::perception) << std::setw(5) << layer(Layer::network) << std::setw(5)
            << layer(Layer::application) << "  " << join(r.impacted, ",") << "\n";
    }
}

void write_scenarios(std::ostream& out, const AssessmentReport& report) {
    out << "Ranked scenarios\n";
    if (report.scenarios.empty()) {
        out << "  (no scenarios)\n";
        return;
    }
    out << "  " << std::right << std::setw(4) << "rank" << "  " << std::left << std::setw(16) << "scenario"
        << std::right << std::setw(14) << "score" << std::setw(7) << "weight" << "  " << std::left << std::setw(14)
        << "action" << std::setw(10) << "treatment" << "rationale\n";
    for (const auto& row : report.scenarios) {
        out << "  " << std::right << std::setw(4) << (row.rank ? std::to_string(*row.rank) : "-") << "  " << std::left
            << std::setw(16) << row.scenario_id << std::right << std::setw(14) << format_amount(row.score)
            << std::setw(7) << row.weight << "  " << std::left << std::setw(14)
            << (row.action.empty() ? "-" : row.action) << std::setw(10) << to_string(row.treatment.treatment)
            << row.treatment.rationale << "\n";
    }
}

void write_loss(std::ostream& out, const AssessmentReport& report) {
    out << "Loss distribution\n";
    if (!report.loss) {
        out << "  (not simulated)\n";
        return;
    }
    const auto& s = *report.loss;
    std::ostringstream var_label;
    var_label << "VaR(" << s.alpha << ")";
    auto line = [&](const std::string& label, const std::string& value) {
        out << "  " << std::left << std::setw(15) << label << value << "\n";
    };
    line("trials", std::to_string(s.trials));
    line("seed", std::to_string(s.seed));
    line("mean loss", format_amount(s.mean_loss));
    line(var_label.str(), format_amount(s.value_at_risk));
    line("min loss", format_amount(s.min_loss));
    line("max loss", format_amount(s.max_loss));
}

std::string write_text(const AssessmentReport& report) {
    std::ostringstream out;
    bool first = true;
    auto section = [&](bool present, void (*write)(std::ostream&, const AssessmentReport&)) {
        if (!present) return;
        if (!first) out << "\n";
        first = false;
        write(out, report);
    };
    section(report.has_impacts, write_impacts);
    section(report.has_scenarios, write_scenarios);
    section(report.has_loss, write_loss);
    return out.str();
}

ImpactReport impact_from_json(const json& value, const std::string& path) {
    check_keys(value, {"origin", "seeds", "impacted", "fd", "denominator", "proportion", "per_layer_counts"}, path);
    ImpactReport r;
    r.origin = read_string(require(value, "origin", path), child_path(path, "origin"));
    const auto& seeds = require(value, "seeds", path);
    detail::expect_array(seeds, child_path(path, "seeds"));
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        r.seeds.push_back(read_string(seeds[i], child_path(child_path(path, "seeds"), i)));
    }
    const auto& impacted = require(value, "impacted", path);
    detail::expect_array(impacted, child_path(path, "impacted"));
    for (std::size_t i = 0; i < impacted.size(); ++i) {
        r.impacted.insert(read_string(impacted[i], child_path(child_path(path, "impacted"), i)));
    }
    r.fd = read_unsigned(require(value, "fd", path), child_path(path, "fd"));
    r.denominator = read_unsigned(require(value, "denominator", path), child_path(path, "denominator"));
    if (r.fd != r.impacted.size()) {
        schema_error(child_path(path, "fd"), "fd must equal the number of impacted components");
    }
    if (r.fd > r.denominator && !(r.fd == 0 && r.denominator == 0)) {
        schema_error(child_path(path, "denominator"), "denominator smaller than fd");
    }
    const auto layers_path = child_path(path, "per_layer_counts");
    const auto& layers = require(value, "per_layer_counts", path);
    detail::expect_object(layers, layers_path);
    for (const auto& item : layers.items()) {
        auto layer = parse_layer(item.key());
        if (!layer) {
            schema_error(child_path(layers_path, item.key()), "unknown layer");
        }
        r.per_layer_counts[*layer] = read_unsigned(item.value(), child_path(layers_path, item.key()));
    }
    return r;
}

TriageRow row_from_json(const json& value, const std::string& path) {
    check_keys(value, {"scenario_id", "rank", "active", "score", "weight", "action", "treatment", "rationale"}, path);
    TriageRow row;
    row.scenario_id = read_string(require(value, "scenario_id", path), child_path(path, "scenario_id"), false);
    const auto& rank = require(value, "rank", path);
    if (!rank.is_null()) {
        row.rank = read_unsigned(rank, child_path(path, "rank"));
    }
    row.active = read_bool(require(value, "active", path), child_path(path, "active"));
    row.score = read_number(require(value, "score", path), child_path(path, "score"));
    const auto weight_path = child_path(path, "weight");
    auto weight = read_unsigned(require(value, "weight", path), weight_path);
    if (weight > 3) {
        schema_error(weight_path, "weight must lie in 0..3");
    }
    row.weight = static_cast<int>(weight);
    row.action = read_string(require(value, "action", path), child_path(path, "action"));
    const auto treatment_path = child_path(path, "treatment");
    auto treatment = parse_treatment(read_string(require(value, "treatment", path), treatment_path));
    if (!treatment) {
        schema_error(treatment_path, "unknown treatment");
    }
    row.treatment = {row.scenario_id, *treatment,
                     read_string(require(value, "rationale", path), child_path(path, "rationale"))};
    return row;
}

LossDistributionSummary loss_from_json(const json& value, const std::string& path) {
    check_keys(value, {"trials", "seed", "alpha", "mean_loss", "value_at_risk", "min_loss", "max_loss"}, path);
    LossDistributionSummary s;
    s.trials = read_unsigned(require(value, "trials", path), child_path(path, "trials"));
    s.seed = read_unsigned(require(value, "seed", path), child_path(path, "seed"));
    s.alpha = read_number(require(value, "alpha", path), child_path(path, "alpha"));
    s.mean_loss = read_number(require(value, "mean_loss", path), child_path(path, "mean_loss"));
    s.value_at_risk = read_number(require(value, "value_at_risk", path), child_path(path, "value_at_risk"));
    s.min_loss = read_number(require(value, "min_loss", path), child_path(path, "min_loss"));
    s.max_loss = read_number(require(value, "max_loss", path), child_path(path, "max_loss"));
    return s;
}

}  // namespace

std::string write_report(const AssessmentReport& report, ReportFormat format) {
    return format == ReportFormat::structured ? write_structured(report) : write_text(report);
}

AssessmentReport parse_report(std::string_view document) {
    const json root = detail::parse_json(document);
    check_keys(root, {"settings", "impacts", "scenarios", "loss"}, "");
    AssessmentReport report;
    report.has_impacts = root.contains("impacts");
    report.has_scenarios = root.contains("scenarios");
    report.has_loss = root.contains("loss");

    const auto& settings = require(root, "settings", "");
    check_keys(settings, {"denominator_mode", "include_self"}, "/settings");
    auto mode = parse_denominator_mode(
        read_string(require(settings, "denominator_mode", "/settings"), "/settings/denominator_mode"));
    if (!mode) {
        schema_error("/settings/denominator_mode", "unknown denominator mode");
    }
    report.mode = *mode;
    report.include_self = read_bool(require(settings, "include_self", "/settings"), "/settings/include_self");

    if (report.has_impacts) {
        const auto& impacts = root["impacts"];
        detail::expect_array(impacts, "/impacts");
        for (std::size_t i = 0; i < impacts.size(); ++i) {
            report.impacts.push_back(impact_from_json(impacts[i], child_path("/impacts", i)));
        }
    }
    if (report.has_scenarios) {
        const auto& rows = root["scenarios"];
        detail::expect_array(rows, "/scenarios");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            report.scenarios.push_back(row_from_json(rows[i], child_path("/scenarios", i)));
        }
    }
    if (report.has_loss && !root["loss"].is_null()) {
        report.loss = loss_from_json(root["loss"], "/loss");
    }
    return report;
}

}  // namespace iotrisk
