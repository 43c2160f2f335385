#include "iotrisk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "iotrisk/error.hpp"
#include "iotrisk/model_io.hpp"
#include "iotrisk/report.hpp"

namespace iotrisk::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Options {
    std::string format = "text";
    bool quiet = false;

    std::string model_path;
    std::string mode;
    bool include_self = true;
    bool include_self_given = false;
    std::string nvd_path;
    std::string vex_path;
    std::vector<std::string> seeds;

    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double alpha = 0.95;
    unsigned workers = 0;
};

class Runner {
public:
    Runner(const Options& options, std::ostream& out, std::ostream& err) : opt_(options), out_(out), err_(err) {}

    int validate() {
        try {
            auto model = parse_model(read_file(opt_.model_path));
            out_ << "valid: " << model.graph.size() << " components, " << model.graph.edges().size() << " edges, "
                 << model.vulnerabilities.size() << " vulnerabilities, " << model.scenarios.size() << " scenarios\n";
            return kSuccess;
        } catch (const Error& e) {
            out_ << "invalid: " << e.what() << "\n";
            err_ << opt_.model_path << ": " << e.what() << "\n";
            return kAssessmentError;
        }
    }

    int assess() {
        auto model = load();
        auto report = base_report(model);
        report.impacts = impact_table(model.graph, model.settings.mode, model.settings.include_self);
        report.scenarios = triage_register(model.graph, model.scenarios, model.vulnerabilities,
                                           model.effective_policy(), model.settings);
        report.loss = monte_carlo(model.scenarios, mc_options());
        return emit(report);
    }

    int simulate() {
        auto model = load();
        auto report = base_report(model);
        report.has_scenarios = false;
        report.has_loss = false;
        report.impacts.push_back(simulate_exploit(model.graph, opt_.seeds, model.settings.mode, model.settings.include_self));
        return emit(report);
    }

    int montecarlo() {
        auto model = load();
        auto report = base_report(model);
        report.has_impacts = false;
        report.has_scenarios = false;
        report.loss = monte_carlo(model.scenarios, mc_options());
        return emit(report);
    }

    int prioritize() {
        auto model = load();
        if (!opt_.vex_path.empty()) {
            auto outcome = apply_vex(model, parse_vex(read_file(opt_.vex_path)));
            for (const auto& s : outcome.unmatched) {
                warn("VEX statement for " + s.vulnerability_id + " on " + s.product_id + " matched nothing");
            }
            model = std::move(outcome.model);
        }
        auto report = base_report(model);
        report.has_impacts = false;
        report.has_loss = false;
        report.scenarios = triage_register(model.graph, model.scenarios, model.vulnerabilities,
                                           model.effective_policy(), model.settings);
        return emit(report);
    }

private:
    AssessmentModel load() {
        auto model = parse_model(read_file(opt_.model_path));
        if (!opt_.nvd_path.empty()) {
            auto imported = parse_nvd_subset(read_file(opt_.nvd_path), model.effective_rubric());
            for (const auto& w : imported.warnings) {
                warn(w);
            }
            model = merge_vulnerabilities(model, imported.records);
        }
        if (!opt_.mode.empty()) {
            model.settings.mode = *parse_denominator_mode(opt_.mode);
        }
        if (opt_.include_self_given) {
            model.settings.include_self = opt_.include_self;
        }
        return model;
    }

    AssessmentReport base_report(const AssessmentModel& model) const {
        AssessmentReport report;
        report.mode = model.settings.mode;
        report.include_self = model.settings.include_self;
        return report;
    }

    MonteCarloOptions mc_options() const { return {opt_.trials, opt_.seed, opt_.alpha, opt_.workers}; }

    int emit(const AssessmentReport& report) {
        out_ << write_report(report, *parse_report_format(opt_.format));
        return kSuccess;
    }

    void warn(const std::string& message) {
        if (!opt_.quiet) {
            err_ << "warning: " << message << "\n";
        }
    }

    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Dependency-graph cyber risk assessment for IoT system models", "iotrisk"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    app.add_flag("--quiet", opt.quiet, "Suppress warnings on the error stream");

    auto model_arg = [&](CLI::App* cmd) {
        cmd->add_option("model", opt.model_path, "Assessment model file (JSON)")->required()->check(CLI::ExistingFile);
    };
    auto graph_flags = [&](CLI::App* cmd) {
        cmd->add_option("--mode", opt.mode, "Worst-case denominator: all_components (default) or max_over_nodes")
            ->check(CLI::IsMember({"all_components", "max_over_nodes"}));
        cmd->add_option("--include-self", opt.include_self,
                        "Count the compromised component itself (default true)");
    };
    auto mc_flags = [&](CLI::App* cmd) {
        cmd->add_option("--trials", opt.trials, "Monte Carlo trials")
            ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
            ->capture_default_str();
        cmd->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
        cmd->add_option("--alpha", opt.alpha, "Value-at-risk confidence level in (0, 1)")
            ->check(CLI::Validator(
                [](std::string& text) -> std::string {
                    double value = 0.0;
                    std::istringstream in(text);
                    if (!(in >> value) || !(value > 0.0 && value < 1.0)) {
                        return "alpha must lie strictly between 0 and 1";
                    }
                    return {};
                },
                "(0,1)"))
            ->capture_default_str();
        cmd->add_option("--workers", opt.workers, "Worker threads (0 = all cores); output does not depend on it");
    };
    auto nvd_flag = [&](CLI::App* cmd) {
        cmd->add_option("--nvd", opt.nvd_path, "NVD-subset file merged into the model's vulnerabilities")
            ->check(CLI::ExistingFile);
    };

    auto* validate = app.add_subcommand("validate", "Check a model file and report the first error");
    model_arg(validate);

    auto* assess = app.add_subcommand("assess", "Impact table, triage and loss summary for a model");
    model_arg(assess);
    graph_flags(assess);
    mc_flags(assess);
    nvd_flag(assess);

    auto* simulate = app.add_subcommand("simulate", "Cascade from one or more compromised components");
    model_arg(simulate);
    graph_flags(simulate);
    simulate->add_option("--seed-component", opt.seeds, "Compromised component id (repeatable)")->required();

    auto* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo loss distribution and value at risk");
    model_arg(montecarlo);
    mc_flags(montecarlo);

    auto* prioritize = app.add_subcommand("prioritize", "Ranked triage table with actions and treatments");
    model_arg(prioritize);
    graph_flags(prioritize);
    nvd_flag(prioritize);
    prioritize->add_option("--vex", opt.vex_path, "VEX-subset file applied before ranking")->check(CLI::ExistingFile);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        auto parsed = app.get_subcommands();
        err << (parsed.empty() ? app.help() : parsed.front()->help());
        return kUsageError;
    }

    for (auto* cmd : {assess, simulate, prioritize}) {
        if (auto* flag = cmd->get_option_no_throw("--include-self"); flag != nullptr && flag->count() > 0) {
            opt.include_self_given = true;
        }
    }

    Runner runner(opt, out, err);
    try {
        if (*validate) return runner.validate();
        if (*assess) return runner.assess();
        if (*simulate) return runner.simulate();
        if (*montecarlo) return runner.montecarlo();
        return runner.prioritize();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kAssessmentError;
    }
}

}  // namespace iotrisk::cli
