#include "iotrisk/model_io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "iotrisk/error.hpp"
#include "json_util.hpp"

namespace iotrisk {

using detail::check_keys;
using detail::child_path;
using detail::json;
using detail::read_bool;
using detail::read_number;
using detail::read_string;
using detail::require;
using detail::schema_error;

namespace {

template <typename Enum, typename Parser>
Enum read_enum(const json& value, const std::string& path, Parser parse, std::string_view what) {
    auto text = read_string(value, path);
    auto parsed = parse(text);
    if (!parsed) {
        schema_error(path, "'" + text + "' is not a valid " + std::string(what));
    }
    return *parsed;
}

std::vector<std::string> read_string_list(const json& value, const std::string& path) {
    detail::expect_array(value, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        out.push_back(read_string(value[i], child_path(path, i), false));
    }
    return out;
}

// --- policy -----------------------------------------------------------

DecisionNode read_node(const json& value, const std::string& path, int depth) {
    detail::expect_object(value, path);
    if (depth > 64) {
        schema_error(path, "decision tree nested too deeply");
    }
    if (value.contains("action")) {
        check_keys(value, {"action"}, path);
        return DecisionNode::leaf(read_string(value["action"], child_path(path, "action"), false));
    }
    check_keys(value, {"attribute", "branches"}, path);
    auto attribute = read_string(require(value, "attribute", path), child_path(path, "attribute"), false);
    const auto branches_path = child_path(path, "branches");
    const auto& branches = require(value, "branches", path);
    detail::expect_object(branches, branches_path);
    std::vector<DecisionNode::Branch> out;
    for (const auto& item : branches.items()) {
        out.push_back({item.key(), read_node(item.value(), child_path(branches_path, item.key()), depth + 1)});
    }
    return DecisionNode::branch(std::move(attribute), std::move(out));
}

DecisionTreePolicy read_policy(const json& value, const std::string& path) {
    check_keys(value, {"attributes", "root"}, path);
    const auto attributes_path = child_path(path, "attributes");
    const auto& attributes = require(value, "attributes", path);
    detail::expect_array(attributes, attributes_path);
    std::vector<PolicyAttribute> decls;
    for (std::size_t i = 0; i < attributes.size(); ++i) {
        const auto item_path = child_path(attributes_path, i);
        check_keys(attributes[i], {"name", "values"}, item_path);
        PolicyAttribute decl;
        decl.name = read_string(require(attributes[i], "name", item_path), child_path(item_path, "name"), false);
        decl.values = read_string_list(require(attributes[i], "values", item_path), child_path(item_path, "values"));
        decls.push_back(std::move(decl));
    }
    auto root = read_node(require(value, "root", path), child_path(path, "root"), 0);
    try {
        return DecisionTreePolicy(std::move(decls), std::move(root));
    } catch (const Error& e) {
        std::string reason = e.what();
        auto colon = reason.find(": ");
        schema_error(child_path(path, "root"), (e.location().empty() ? "" : e.location() + ": ") +
                                                   (colon == std::string::npos ? reason : reason.substr(colon + 2)));
    }
}

json write_node(const DecisionNode& node) {
    if (node.is_leaf()) {
        return json{{"action", node.action}};
    }
    json branches = json::object();
    for (const auto& branch : node.branches) {
        branches[branch.value] = write_node(branch.child);
    }
    return json{{"attribute", node.attribute}, {"branches", std::move(branches)}};
}

json write_policy(const DecisionTreePolicy& policy) {
    json attributes = json::array();
    for (const auto& decl : policy.attributes()) {
        attributes.push_back(json{{"name", decl.name}, {"values", decl.values}});
    }
    return json{{"attributes", std::move(attributes)}, {"root", write_node(policy.root())}};
}

// --- rubric -----------------------------------------------------------

template <typename Enum, std::size_t N>
void read_scores(const json& object, std::string_view key, const std::string& path, std::array<double, N>& scores) {
    auto it = object.find(key);
    if (it == object.end()) {
        return;
    }
    const auto table_path = child_path(path, key);
    detail::expect_object(*it, table_path);
    for (const auto& item : it->items()) {
        const auto entry_path = child_path(table_path, item.key());
        std::optional<std::size_t> level;
        for (std::size_t i = 0; i < N; ++i) {
            if (to_string(static_cast<Enum>(i)) == item.key()) {
                level = i;
            }
        }
        if (!level) {
            schema_error(entry_path, "unknown level '" + item.key() + "'");
        }
        double score = read_number(item.value(), entry_path);
        if (score < 0.0 || score > 1.0) {
            schema_error(entry_path, "subscore must lie in [0, 1]");
        }
        scores[*level] = score;
    }
}

template <typename Enum, std::size_t N>
json write_scores(const std::array<double, N>& scores) {
    json table = json::object();
    for (std::size_t i = 0; i < N; ++i) {
        table[std::string(to_string(static_cast<Enum>(i)))] = scores[i];
    }
    return table;
}

WeightRubric read_rubric(const json& value, const std::string& path) {
    check_keys(value, {"access_complexity", "required_privileges", "public_exploit", "attack_vector", "patch_state"},
               path);
    WeightRubric rubric;
    read_scores<AccessComplexity>(value, "access_complexity", path, rubric.access_complexity);
    read_scores<RequiredPrivileges>(value, "required_privileges", path, rubric.required_privileges);
    read_scores<PublicExploit>(value, "public_exploit", path, rubric.public_exploit);
    read_scores<AttackVector>(value, "attack_vector", path, rubric.attack_vector);
    read_scores<PatchState>(value, "patch_state", path, rubric.patch_state);
    try {
        validate(rubric);
    } catch (const Error&) {
        schema_error(path, "subscores must not decrease with severity");
    }
    return rubric;
}

json write_rubric(const WeightRubric& rubric) {
    return json{{"access_complexity", write_scores<AccessComplexity>(rubric.access_complexity)},
                {"required_privileges", write_scores<RequiredPrivileges>(rubric.required_privileges)},
                {"public_exploit", write_scores<PublicExploit>(rubric.public_exploit)},
                {"attack_vector", write_scores<AttackVector>(rubric.attack_vector)},
                {"patch_state", write_scores<PatchState>(rubric.patch_state)}};
}

// --- settings ---------------------------------------------------------

double read_unit(const json& object, std::string_view key, const std::string& path, double fallback) {
    auto it = object.find(key);
    if (it == object.end()) {
        return fallback;
    }
    const auto value_path = child_path(path, key);
    double value = read_number(*it, value_path);
    if (value < 0.0 || value > 1.0) {
        schema_error(value_path, "must lie in [0, 1]");
    }
    return value;
}

AssessmentSettings read_settings(const json& value, const std::string& path) {
    check_keys(value,
               {"denominator_mode", "include_self", "bump_threshold", "appetite", "avoid_proportion",
                "transfer_proportion"},
               path);
    AssessmentSettings settings;
    if (value.contains("denominator_mode")) {
        settings.mode = read_enum<DenominatorMode>(value["denominator_mode"], child_path(path, "denominator_mode"),
                                                   parse_denominator_mode, "denominator mode");
    }
    if (value.contains("include_self")) {
        settings.include_self = read_bool(value["include_self"], child_path(path, "include_self"));
    }
    settings.bump_threshold = read_unit(value, "bump_threshold", path, settings.bump_threshold);
    settings.treatment.appetite = read_unit(value, "appetite", path, settings.treatment.appetite);
    settings.treatment.avoid_proportion = read_unit(value, "avoid_proportion", path, settings.treatment.avoid_proportion);
    settings.treatment.transfer_proportion =
        read_unit(value, "transfer_proportion", path, settings.treatment.transfer_proportion);
    return settings;
}

json write_settings(const AssessmentSettings& settings) {
    return json{{"denominator_mode", to_string(settings.mode)},
                {"include_self", settings.include_self},
                {"bump_threshold", settings.bump_threshold},
                {"appetite", settings.treatment.appetite},
                {"avoid_proportion", settings.treatment.avoid_proportion},
                {"transfer_proportion", settings.treatment.transfer_proportion}};
}

// --- model sections ---------------------------------------------------

ExploitabilityFactors read_factors(const json& value, const std::string& path) {
    check_keys(value, {"access_complexity", "required_privileges", "public_exploit", "attack_vector", "patch_state"},
               path);
    ExploitabilityFactors f;
    f.access_complexity = read_enum<AccessComplexity>(require(value, "access_complexity", path),
                                                      child_path(path, "access_complexity"),
                                                      parse_access_complexity, "access complexity");
    f.required_privileges = read_enum<RequiredPrivileges>(require(value, "required_privileges", path),
                                                          child_path(path, "required_privileges"),
                                                          parse_required_privileges, "privilege level");
    f.public_exploit = read_enum<PublicExploit>(require(value, "public_exploit", path),
                                                child_path(path, "public_exploit"), parse_public_exploit,
                                                "public exploit level");
    f.attack_vector = read_enum<AttackVector>(require(value, "attack_vector", path), child_path(path, "attack_vector"),
                                              parse_attack_vector, "attack vector");
    f.patch_state = read_enum<PatchState>(require(value, "patch_state", path), child_path(path, "patch_state"),
                                          parse_patch_state, "patch state");
    return f;
}

json write_factors(const ExploitabilityFactors& f) {
    return json{{"access_complexity", to_string(f.access_complexity)},
                {"required_privileges", to_string(f.required_privileges)},
                {"public_exploit", to_string(f.public_exploit)},
                {"attack_vector", to_string(f.attack_vector)},
                {"patch_state", to_string(f.patch_state)}};
}

RiskScenario read_scenario(const json& value, const std::string& path) {
    check_keys(value,
               {"id", "description", "probability", "consequence", "origin_component", "vulnerability_id",
                "category", "tags", "triage"},
               path);
    RiskScenario s;
    s.id = read_string(require(value, "id", path), child_path(path, "id"), false);
    if (value.contains("description")) {
        s.description = read_string(value["description"], child_path(path, "description"));
    }
    const auto p_path = child_path(path, "probability");
    s.probability = read_number(require(value, "probability", path), p_path);
    if (s.probability < 0.0 || s.probability > 1.0) {
        schema_error(p_path, "probability must lie in [0, 1]");
    }
    const auto x_path = child_path(path, "consequence");
    s.consequence = read_number(require(value, "consequence", path), x_path);
    if (s.consequence < 0.0) {
        schema_error(x_path, "consequence must be non-negative");
    }
    if (value.contains("origin_component")) {
        s.origin_component = read_string(value["origin_component"], child_path(path, "origin_component"), false);
    }
    if (value.contains("vulnerability_id")) {
        s.vulnerability_id = read_string(value["vulnerability_id"], child_path(path, "vulnerability_id"), false);
    }
    if (value.contains("category")) {
        s.category = read_enum<RiskCategory>(value["category"], child_path(path, "category"), parse_risk_category,
                                             "risk category");
    }
    if (value.contains("tags")) {
        s.tags = read_string_list(value["tags"], child_path(path, "tags"));
    }
    if (value.contains("triage")) {
        const auto triage_path = child_path(path, "triage");
        detail::expect_object(value["triage"], triage_path);
        for (const auto& item : value["triage"].items()) {
            s.triage[item.key()] = read_string(item.value(), child_path(triage_path, item.key()), false);
        }
    }
    return s;
}

json write_scenario(const RiskScenario& s) {
    json out{{"id", s.id},
             {"description", s.description},
             {"probability", s.probability},
             {"consequence", s.consequence},
             {"category", to_string(s.category)}};
    if (s.origin_component) out["origin_component"] = *s.origin_component;
    if (s.vulnerability_id) out["vulnerability_id"] = *s.vulnerability_id;
    if (!s.tags.empty()) out["tags"] = s.tags;
    if (!s.triage.empty()) out["triage"] = s.triage;
    return out;
}

}  // namespace

const WeightRubric& AssessmentModel::effective_rubric() const {
    static const WeightRubric kDefault{};
    return rubric ? *rubric : kDefault;
}

const VulnerabilityRecord* AssessmentModel::find_vulnerability(std::string_view id) const {
    auto it = std::find_if(vulnerabilities.begin(), vulnerabilities.end(), [&](const auto& v) { return v.id == id; });
    return it == vulnerabilities.end() ? nullptr : &*it;
}

AssessmentModel parse_model(std::string_view document) {
    const json root = detail::parse_json(document);
    const std::string top;
    check_keys(root, {"components", "edges", "vulnerabilities", "scenarios", "policy", "rubric", "settings"}, top);

    AssessmentModel model;
    if (root.contains("rubric")) {
        model.rubric = read_rubric(root["rubric"], "/rubric");
    }
    if (root.contains("settings")) {
        model.settings = read_settings(root["settings"], "/settings");
    }
    if (root.contains("policy")) {
        model.policy = read_policy(root["policy"], "/policy");
    }

    // vulnerabilities
    std::set<std::string> vulnerability_ids;
    if (root.contains("vulnerabilities")) {
        const auto& list = root["vulnerabilities"];
        detail::expect_array(list, "/vulnerabilities");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child_path("/vulnerabilities", i);
            check_keys(list[i], {"id", "summary", "factors", "active", "inactive_products"}, path);
            auto id = read_string(require(list[i], "id", path), child_path(path, "id"), false);
            if (!vulnerability_ids.insert(id).second) {
                schema_error(child_path(path, "id"), "duplicate vulnerability id '" + id + "'");
            }
            std::string summary;
            if (list[i].contains("summary")) {
                summary = read_string(list[i]["summary"], child_path(path, "summary"));
            }
            auto factors = read_factors(require(list[i], "factors", path), child_path(path, "factors"));
            auto record = make_vulnerability(std::move(id), std::move(summary), factors, model.effective_rubric());
            if (list[i].contains("active")) {
                record.active = read_bool(list[i]["active"], child_path(path, "active"));
            }
            if (list[i].contains("inactive_products")) {
                record.inactive_products =
                    read_string_list(list[i]["inactive_products"], child_path(path, "inactive_products"));
            }
            model.vulnerabilities.push_back(std::move(record));
        }
    }

    // components
    std::vector<Component> components;
    std::set<std::string> component_ids;
    {
        const auto& list = require(root, "components", top);
        detail::expect_array(list, "/components");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child_path("/components", i);
            check_keys(list[i], {"id", "name", "layer", "vulnerabilities"}, path);
            Component c;
            c.id = read_string(require(list[i], "id", path), child_path(path, "id"), false);
            if (!component_ids.insert(c.id).second) {
                schema_error(child_path(path, "id"), "duplicate component id '" + c.id + "'");
            }
            if (list[i].contains("name")) {
                c.name = read_string(list[i]["name"], child_path(path, "name"));
            }
            c.layer = read_enum<Layer>(require(list[i], "layer", path), child_path(path, "layer"), parse_layer, "layer");
            if (list[i].contains("vulnerabilities")) {
                const auto v_path = child_path(path, "vulnerabilities");
                c.vulnerability_ids = read_string_list(list[i]["vulnerabilities"], v_path);
                for (std::size_t k = 0; k < c.vulnerability_ids.size(); ++k) {
                    if (!vulnerability_ids.contains(c.vulnerability_ids[k])) {
                        throw Error(ErrorCode::DanglingReference,
                                    "component '" + c.id + "' lists unknown vulnerability '" + c.vulnerability_ids[k] +
                                        "'",
                                    child_path(v_path, k));
                    }
                }
            }
            components.push_back(std::move(c));
        }
    }
    if (components.empty()) {
        schema_error("/components", "at least one component is required");
    }

    // edges
    std::vector<DependencyEdge> edges;
    if (root.contains("edges")) {
        const auto& list = root["edges"];
        detail::expect_array(list, "/edges");
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child_path("/edges", i);
            check_keys(list[i], {"source", "target", "configured"}, path);
            DependencyEdge e;
            e.source = read_string(require(list[i], "source", path), child_path(path, "source"), false);
            e.target = read_string(require(list[i], "target", path), child_path(path, "target"), false);
            if (list[i].contains("configured")) {
                e.configured = read_bool(list[i]["configured"], child_path(path, "configured"));
            }
            for (auto key : {"source", "target"}) {
                const auto& id = std::string_view(key) == "source" ? e.source : e.target;
                if (!component_ids.contains(id)) {
                    throw Error(ErrorCode::DanglingReference,
                                "edge " + e.source + "->" + e.target + " references unknown component '" + id + "'",
                                child_path(path, key));
                }
            }
            if (e.source == e.target) {
                schema_error(path, "self-loop on component '" + e.source + "'");
            }
            if (!seen.emplace(e.source, e.target).second) {
                schema_error(path, "duplicate edge " + e.source + "->" + e.target);
            }
            edges.push_back(std::move(e));
        }
    }
    model.graph = DependencyGraph::build(std::move(components), std::move(edges));

    for (std::size_t i = 0; i < model.vulnerabilities.size(); ++i) {
        const auto& products = model.vulnerabilities[i].inactive_products;
        for (std::size_t k = 0; k < products.size(); ++k) {
            if (!component_ids.contains(products[k])) {
                throw Error(ErrorCode::DanglingReference, "unknown component '" + products[k] + "'",
                            child_path(child_path(child_path("/vulnerabilities", i), "inactive_products"), k));
            }
        }
    }

    // scenarios
    if (root.contains("scenarios")) {
        const auto& list = root["scenarios"];
        detail::expect_array(list, "/scenarios");
        std::vector<RiskScenario> scenarios;
        std::set<std::string> scenario_ids;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto path = child_path("/scenarios", i);
            auto scenario = read_scenario(list[i], path);
            if (!scenario_ids.insert(scenario.id).second) {
                schema_error(child_path(path, "id"), "duplicate scenario id '" + scenario.id + "'");
            }
            if (scenario.origin_component && !component_ids.contains(*scenario.origin_component)) {
                throw Error(ErrorCode::DanglingReference,
                            "scenario '" + scenario.id + "' names unknown component '" + *scenario.origin_component +
                                "'",
                            child_path(path, "origin_component"));
            }
            if (scenario.vulnerability_id && !vulnerability_ids.contains(*scenario.vulnerability_id)) {
                throw Error(ErrorCode::DanglingReference,
                            "scenario '" + scenario.id + "' names unknown vulnerability '" +
                                *scenario.vulnerability_id + "'",
                            child_path(path, "vulnerability_id"));
            }
            for (const auto& [name, value] : scenario.triage) {
                const auto* decl = model.effective_policy().attribute(name);
                if (decl == nullptr ||
                    std::find(decl->values.begin(), decl->values.end(), value) == decl->values.end()) {
                    schema_error(child_path(child_path(path, "triage"), name),
                                 "'" + name + "=" + value + "' is not declared by the policy");
                }
            }
            scenarios.push_back(std::move(scenario));
        }
        model.scenarios = RiskRegister(std::move(scenarios));
    }
    return model;
}

std::string serialize_model(const AssessmentModel& model) {
    json root;
    json components = json::array();
    for (const auto& c : model.graph.components()) {
        json item{{"id", c.id}, {"name", c.name}, {"layer", to_string(c.layer)}};
        if (!c.vulnerability_ids.empty()) {
            item["vulnerabilities"] = c.vulnerability_ids;
        }
        components.push_back(std::move(item));
    }
    root["components"] = std::move(components);

    json edges = json::array();
    for (const auto& e : model.graph.edges()) {
        edges.push_back(json{{"source", e.source}, {"target", e.target}, {"configured", e.configured}});
    }
    root["edges"] = std::move(edges);

    json vulnerabilities = json::array();
    for (const auto& v : model.vulnerabilities) {
        json item{{"id", v.id}, {"summary", v.summary}, {"factors", write_factors(v.factors)}, {"active", v.active}};
        if (!v.inactive_products.empty()) {
            item["inactive_products"] = v.inactive_products;
        }
        vulnerabilities.push_back(std::move(item));
    }
    root["vulnerabilities"] = std::move(vulnerabilities);

    json scenarios = json::array();
    for (const auto& s : model.scenarios.scenarios()) {
        scenarios.push_back(write_scenario(s));
    }
    root["scenarios"] = std::move(scenarios);

    if (model.policy) {
        root["policy"] = write_policy(*model.policy);
    }
    if (model.rubric) {
        root["rubric"] = write_rubric(*model.rubric);
    }
    root["settings"] = write_settings(model.settings);
    return root.dump(2) + "\n";
}

DecisionTreePolicy parse_policy(std::string_view document) { return read_policy(detail::parse_json(document), ""); }

std::string serialize_policy(const DecisionTreePolicy& policy) { return write_policy(policy).dump(2) + "\n"; }

// --- NVD subset -------------------------------------------------------

namespace {

// CVSS v3.x base, temporal and environmental metrics with their legal values.
const std::map<std::string, std::set<std::string>, std::less<>>& cvss_metrics() {
    static const std::map<std::string, std::set<std::string>, std::less<>> table{
        {"AV", {"N", "A", "L", "P"}},
        {"AC", {"L", "H"}},
        {"PR", {"N", "L", "H"}},
        {"UI", {"N", "R"}},
        {"S", {"U", "C"}},
        {"C", {"N", "L", "H"}},
        {"I", {"N", "L", "H"}},
        {"A", {"N", "L", "H"}},
        {"E", {"X", "U", "P", "F", "H"}},
        {"RL", {"X", "O", "T", "W", "U"}},
        {"RC", {"X", "U", "R", "C"}},
        {"CR", {"X", "L", "M", "H"}},
        {"IR", {"X", "L", "M", "H"}},
        {"AR", {"X", "L", "M", "H"}},
        {"MAV", {"X", "N", "A", "L", "P"}},
        {"MAC", {"X", "L", "H"}},
        {"MPR", {"X", "N", "L", "H"}},
        {"MUI", {"X", "N", "R"}},
        {"MS", {"X", "U", "C"}},
        {"MC", {"X", "N", "L", "H"}},
        {"MI", {"X", "N", "L", "H"}},
        {"MA", {"X", "N", "L", "H"}},
    };
    return table;
}

}  // namespace

std::vector<std::string> apply_cvss_vector(std::string_view vector, ExploitabilityFactors& factors) {
    std::vector<std::string> warnings;
    std::set<std::string> seen;
    std::size_t start = 0;
    bool first = true;
    while (start <= vector.size()) {
        auto end = vector.find('/', start);
        if (end == std::string_view::npos) {
            end = vector.size();
        }
        std::string token(vector.substr(start, end - start));
        start = end + 1;

        if (first && token.starts_with("CVSS:")) {
            if (token != "CVSS:3.0" && token != "CVSS:3.1") {
                throw Error(ErrorCode::UnknownMetric, "unsupported CVSS version token '" + token + "'");
            }
            first = false;
            continue;
        }
        first = false;

        auto colon = token.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size() ||
            token.find(':', colon + 1) != std::string::npos) {
            throw Error(ErrorCode::UnknownMetric, "malformed CVSS token '" + token + "'");
        }
        auto metric = token.substr(0, colon);
        auto value = token.substr(colon + 1);
        auto it = cvss_metrics().find(metric);
        if (it == cvss_metrics().end() || !it->second.contains(value)) {
            throw Error(ErrorCode::UnknownMetric, "unknown CVSS token '" + token + "'");
        }
        if (!seen.insert(metric).second) {
            throw Error(ErrorCode::UnknownMetric, "repeated CVSS metric '" + metric + "'");
        }

        if (metric == "AV") {
            factors.attack_vector = value == "N"   ? AttackVector::remote
                                    : value == "A" ? AttackVector::adjacent
                                    : value == "L" ? AttackVector::local
                                                   : AttackVector::physical;
        } else if (metric == "AC") {
            factors.access_complexity = value == "L" ? AccessComplexity::low : AccessComplexity::high;
        } else if (metric == "PR") {
            factors.required_privileges = value == "N"   ? RequiredPrivileges::none
                                          : value == "L" ? RequiredPrivileges::user
                                                         : RequiredPrivileges::admin;
        } else {
            warnings.push_back("skipped CVSS metric '" + token + "'");
        }
    }
    for (auto required : {"AV", "AC", "PR"}) {
        if (!seen.contains(required)) {
            throw Error(ErrorCode::UnknownMetric, "CVSS vector lacks required metric '" + std::string(required) + "'");
        }
    }
    return warnings;
}

NvdImport parse_nvd_subset(std::string_view document, const WeightRubric& rubric) {
    const json root = detail::parse_json(document);
    detail::expect_array(root, "/");
    NvdImport result;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const auto path = child_path("", i);
        check_keys(root[i], {"id", "description", "cvss_vector", "public_exploit", "patch_state"}, path);
        auto id = read_string(require(root[i], "id", path), child_path(path, "id"), false);
        if (!ids.insert(id).second) {
            schema_error(child_path(path, "id"), "duplicate vulnerability id '" + id + "'");
        }
        std::string description;
        if (root[i].contains("description")) {
            description = read_string(root[i]["description"], child_path(path, "description"));
        }
        const auto vector_path = child_path(path, "cvss_vector");
        auto vector = read_string(require(root[i], "cvss_vector", path), vector_path, false);

        ExploitabilityFactors factors;
        factors.public_exploit = PublicExploit::none;
        factors.patch_state = PatchState::unpatched;
        try {
            for (auto& warning : apply_cvss_vector(vector, factors)) {
                result.warnings.push_back(id + ": " + warning);
            }
        } catch (const Error& e) {
            std::string reason = e.what();
            throw Error(e.code(), reason.substr(reason.find(": ") + 2), vector_path);
        }
        if (root[i].contains("public_exploit")) {
            factors.public_exploit = read_enum<PublicExploit>(root[i]["public_exploit"], child_path(path, "public_exploit"),
                                                              parse_public_exploit, "public exploit level");
        }
        if (root[i].contains("patch_state")) {
            factors.patch_state = read_enum<PatchState>(root[i]["patch_state"], child_path(path, "patch_state"),
                                                        parse_patch_state, "patch state");
        }
        result.records.push_back(make_vulnerability(std::move(id), std::move(description), factors, rubric));
    }
    return result;
}

AssessmentModel merge_vulnerabilities(const AssessmentModel& model, const std::vector<VulnerabilityRecord>& records) {
    AssessmentModel merged = model;
    for (const auto& record : records) {
        auto it = std::find_if(merged.vulnerabilities.begin(), merged.vulnerabilities.end(),
                               [&](const auto& v) { return v.id == record.id; });
        if (it == merged.vulnerabilities.end()) {
            merged.vulnerabilities.push_back(record);
        } else {
            *it = record;
        }
    }
    return merged;
}

// --- VEX --------------------------------------------------------------

std::string_view to_string(VexStatus status) {
    switch (status) {
    case VexStatus::not_affected: return "not_affected";
    case VexStatus::affected: return "affected";
    case VexStatus::fixed: return "fixed";
    case VexStatus::under_investigation: return "under_investigation";
    }
    return "under_investigation";
}

std::optional<VexStatus> parse_vex_status(std::string_view text) {
    for (auto s : {VexStatus::not_affected, VexStatus::affected, VexStatus::fixed, VexStatus::under_investigation}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

std::vector<VexStatement> parse_vex(std::string_view document) {
    const json root = detail::parse_json(document);
    detail::expect_array(root, "/");
    std::vector<VexStatement> statements;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const auto path = child_path("", i);
        check_keys(root[i], {"vulnerability_id", "product_id", "status", "justification"}, path);
        VexStatement s;
        s.vulnerability_id =
            read_string(require(root[i], "vulnerability_id", path), child_path(path, "vulnerability_id"), false);
        s.product_id = read_string(require(root[i], "product_id", path), child_path(path, "product_id"), false);
        s.status = read_enum<VexStatus>(require(root[i], "status", path), child_path(path, "status"), parse_vex_status,
                                        "VEX status");
        if (root[i].contains("justification") && !root[i]["justification"].is_null()) {
            s.justification = read_string(root[i]["justification"], child_path(path, "justification"));
        }
        statements.push_back(std::move(s));
    }
    return statements;
}

VexOutcome apply_vex(const AssessmentModel& model, const std::vector<VexStatement>& statements) {
    VexOutcome outcome{model, {}};
    auto& vulns = outcome.model.vulnerabilities;
    std::set<std::string> touched;
    for (const auto& statement : statements) {
        auto it = std::find_if(vulns.begin(), vulns.end(), [&](const auto& v) { return v.id == statement.vulnerability_id; });
        if (it == vulns.end() || !model.graph.contains(statement.product_id)) {
            outcome.unmatched.push_back(statement);
            continue;
        }
        if (statement.status != VexStatus::not_affected && statement.status != VexStatus::fixed) {
            continue;
        }
        auto& products = it->inactive_products;
        if (std::find(products.begin(), products.end(), statement.product_id) == products.end()) {
            products.push_back(statement.product_id);
            std::sort(products.begin(), products.end());
            touched.insert(it->id);
        }
    }

    // A record goes inactive once every component carrying it is ruled out.
    for (auto& v : vulns) {
        if (!touched.contains(v.id) || !v.active) {
            continue;
        }
        std::set<std::string> carriers;
        for (const auto& c : model.graph.components()) {
            if (std::find(c.vulnerability_ids.begin(), c.vulnerability_ids.end(), v.id) != c.vulnerability_ids.end()) {
                carriers.insert(c.id);
            }
        }
        for (const auto& s : model.scenarios.scenarios()) {
            if (s.vulnerability_id == v.id && s.origin_component) {
                carriers.insert(*s.origin_component);
            }
        }
        bool all_ruled_out = !carriers.empty() && std::all_of(carriers.begin(), carriers.end(), [&](const auto& id) {
            return std::find(v.inactive_products.begin(), v.inactive_products.end(), id) != v.inactive_products.end();
        });
        if (all_ruled_out) {
            v.active = false;
        }
    }
    return outcome;
}

}  // namespace iotrisk
