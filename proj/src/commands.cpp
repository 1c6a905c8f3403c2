#include "nba/commands.hpp"

#include "nba/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace nba {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

// Findings of a full project check. Informational findings never block.
struct CheckOutcome {
    std::vector<std::string> blocking;
    std::vector<std::string> informational;
};

CheckOutcome collect_findings(const LoadedProject& project) {
    CheckOutcome outcome;
    for (const auto& issue : validate_against_ontology(project.catalog, project.ontology))
        outcome.blocking.push_back("error: " + issue.to_string());
    for (const auto& finding :
         lint_catalog(project.catalog, project.ontology, project.scenes)) {
        std::string line = finding.to_string();
        if (finding.informational)
            outcome.informational.push_back("info: " + line);
        else
            outcome.blocking.push_back("error: " + line);
    }
    for (const auto& issue : check_catalog_links(project.catalog, project.ledger))
        outcome.blocking.push_back("error: " + issue.to_string());
    for (const auto& scene : project.scenes)
        for (const auto& issue : check_scene(project.ontology, scene))
            outcome.blocking.push_back("error: scene " + scene.scenario_id + ": " +
                                       issue.to_string());
    return outcome;
}

} // namespace

int cmd_check(const ProjectConfig& config, std::ostream& out, std::ostream& err) {
    try {
        LoadedProject project = load_all(config);
        CheckOutcome outcome = collect_findings(project);
        for (const auto& line : outcome.blocking) out << line << "\n";
        for (const auto& line : outcome.informational) out << line << "\n";
        if (outcome.blocking.empty()) {
            out << "ok: " << project.catalog.formalized_count() << " rules, "
                << project.scenes.size() << " scenes, " << project.ledger.assumptions().size()
                << " assumptions\n";
            return kExitOk;
        }
        return kExitFindings;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_lint(const ProjectConfig& config, std::ostream& out, std::ostream& err) {
    try {
        LoadedProject project = load_all(config);
        bool blocking = false;
        for (const auto& finding :
             lint_catalog(project.catalog, project.ontology, project.scenes)) {
            out << (finding.informational ? "info: " : "error: ") << finding.to_string() << "\n";
            blocking = blocking || !finding.informational;
        }
        for (const auto& issue : check_catalog_links(project.catalog, project.ledger)) {
            out << "error: " << issue.to_string() << "\n";
            blocking = true;
        }
        return blocking ? kExitFindings : kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_infer(const ProjectConfig& config, const std::string& scenario_id, bool all_traces,
              std::ostream& out, std::ostream& err) {
    try {
        LoadedProject project = load_all(config);
        const Scene* scene = project.find_scene(scenario_id);
        if (!scene) {
            err << "unknown scenario id: " << scenario_id << "\n";
            return kExitUnknownScenario;
        }

        std::vector<std::string> gaps;
        for (const auto& issue : check_scene(project.ontology, *scene))
            gaps.push_back(issue.to_string());
        for (const auto& issue : validate_against_ontology(project.catalog, project.ontology))
            gaps.push_back(issue.to_string());
        if (!gaps.empty()) {
            for (const auto& line : gaps) out << "error: " << line << "\n";
            return kExitFindings;
        }

        InferenceOptions options;
        options.record_all_traces = all_traces || config.record_all_traces;
        InferenceResult result = infer(project.ontology, *scene, project.catalog, options);

        write_file(config.output_dir / (scenario_id + ".facts"), result.factbase.dump());
        if (options.record_all_traces) {
            std::ostringstream traces;
            for (const auto& fact : result.factbase.facts()) {
                const auto* list = result.factbase.traces(fact);
                if (!list) continue;
                for (const auto& trace : *list)
                    traces << fact.to_string() << " rule=" << trace.rule_id
                           << " bindings=" << format_bindings(trace.bindings) << "\n";
            }
            write_file(config.output_dir / (scenario_id + ".traces"), traces.str());
        }

        for (const auto& fact : result.factbase.facts_with_origin(FactOrigin::Derived))
            if (config.behavior_predicates.count(fact.predicate))
                out << fact.to_string() << "\n";
        for (const auto& inconsistency : result.inconsistencies)
            err << "inconsistent: " << inconsistency.to_string() << "\n";
        return result.consistent() ? kExitOk : kExitFindings;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_verify(const ProjectConfig& config, std::ostream& out, std::ostream& err) {
    try {
        LoadedProject project = load_all(config);
        CatalogReport report =
            verify_catalog(project.ontology, project.catalog, project.scenes,
                           project.expectations, project.ledger);
        std::string text = format_report(report);
        write_file(config.output_dir / "report.txt", text);
        write_file(config.output_dir / "report.json", report_json(report).dump(2) + "\n");
        out << text;
        return report.all_pass() ? kExitOk : kExitFindings;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_trace(const ProjectConfig& config, const std::string& scenario_id,
              const std::string& fact_text, std::ostream& out, std::ostream& err) {
    try {
        LoadedProject project = load_all(config);
        const Scene* scene = project.find_scene(scenario_id);
        if (!scene) {
            err << "unknown scenario id: " << scenario_id << "\n";
            return kExitUnknownScenario;
        }
        GroundFact fact = parse_ground_fact(fact_text);

        InferenceResult result = infer(project.ontology, *scene, project.catalog);
        if (!result.factbase.contains(fact)) {
            err << "fact " << fact.to_string() << " is not in the fixpoint of scenario "
                << scenario_id << "\n";
            return kExitFactNotDerivable;
        }

        DerivationTree tree = explain(result.factbase, fact);

        // Provenance chain over every derived fact in the tree.
        FactSet in_tree;
        auto collect = [&](auto&& self, const DerivationTree& node) -> void {
            in_tree.insert(node.fact);
            for (const auto& premise : node.premises) self(self, premise);
        };
        collect(collect, tree);
        TraceReport chain =
            trace_report(result.factbase, project.catalog, project.ledger, in_tree);

        std::ostringstream text;
        text << format_tree(tree) << "\n" << format_trace_report(chain);
        write_file(config.output_dir / "trace.txt", text.str());

        nlohmann::json j;
        j["scenario"] = scenario_id;
        j["fact"] = fact.to_string();
        auto tree_json = [&](auto&& self, const DerivationTree& node) -> nlohmann::json {
            nlohmann::json n;
            n["fact"] = node.fact.to_string();
            n["origin"] = origin_name(node.origin);
            if (node.origin == FactOrigin::Derived) {
                n["rule"] = node.rule_id;
                nlohmann::json b = nlohmann::json::object();
                for (const auto& [var, value] : node.bindings) {
                    if (const Individual* ind = std::get_if<Individual>(&value))
                        b[var] = ind->name;
                    else
                        b[var] = format_literal(std::get<Literal>(value));
                }
                n["bindings"] = std::move(b);
                n["premises"] = nlohmann::json::array();
                for (const auto& premise : node.premises)
                    n["premises"].push_back(self(self, premise));
            }
            return n;
        };
        j["tree"] = tree_json(tree_json, tree);
        j["provenance"] = trace_report_json(chain);
        write_file(config.output_dir / "trace.json", j.dump(2) + "\n");

        out << text.str();
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"semantic norm-behavior analysis over scenario catalogs"};
    app.require_subcommand(1);

    std::string project_file;
    std::string scenario_id;
    std::string fact_text;
    bool all_traces = false;

    auto add_project = [&](CLI::App* cmd) {
        cmd->add_option("--project", project_file, "project config file")->required();
    };
    CLI::App* check = app.add_subcommand("check", "parse and validate all project inputs");
    add_project(check);
    CLI::App* lint = app.add_subcommand("lint", "lint the rule catalog");
    add_project(lint);
    CLI::App* infer_cmd = app.add_subcommand("infer", "run inference for one scenario");
    add_project(infer_cmd);
    infer_cmd->add_option("--scenario", scenario_id, "scenario id")->required();
    infer_cmd->add_flag("--all-traces", all_traces, "record every derivation trace");
    CLI::App* verify = app.add_subcommand("verify", "verify the whole scenario catalog");
    add_project(verify);
    CLI::App* trace = app.add_subcommand("trace", "trace one fact back to its sources");
    add_project(trace);
    trace->add_option("--scenario", scenario_id, "scenario id")->required();
    trace->add_option("--fact", fact_text, "ground fact, e.g. \"anhalten_in(ego, zoneBlau1)\"")
        ->required();

    std::vector<const char*> argv;
    argv.push_back("nba");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitParse;
    }

    ProjectConfig config;
    try {
        config = load_project(project_file);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return kExitParse;
    }

    if (check->parsed()) return cmd_check(config, out, err);
    if (lint->parsed()) return cmd_lint(config, out, err);
    if (infer_cmd->parsed()) return cmd_infer(config, scenario_id, all_traces, out, err);
    if (verify->parsed()) return cmd_verify(config, out, err);
    return cmd_trace(config, scenario_id, fact_text, out, err);
}

} // namespace nba
