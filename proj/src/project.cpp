#include "nba/project.hpp"

#include "nba/errors.hpp"
#include "scan.hpp"

#include <fstream>
#include <sstream>

namespace nba {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, std::string value) {
    std::filesystem::path p(std::move(value));
    return p.is_absolute() ? p : base / p;
}

} // namespace

ProjectConfig load_project(const std::filesystem::path& config_file) {
    std::ifstream in(config_file, std::ios::binary);
    if (!in) throw ConfigError("cannot open project file: " + config_file.string());
    std::ostringstream buf;
    buf << in.rdbuf();

    ProjectConfig config;
    config.base_dir = config_file.parent_path();
    bool have_behavior = false;

    for (const auto& line : detail::logical_lines(buf.str())) {
        auto eq = line.text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(config_file.string() + ":" + std::to_string(line.number) +
                              ": expected key = value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t");
            auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.text.substr(0, eq));
        std::string value = trim(line.text.substr(eq + 1));
        if (value.empty())
            throw ConfigError(config_file.string() + ":" + std::to_string(line.number) +
                              ": empty value for key " + key);

        if (key == "ontology") {
            config.ontology_path = resolve(config.base_dir, value);
        } else if (key == "rules") {
            config.rules_path = resolve(config.base_dir, value);
        } else if (key == "sources") {
            config.sources_path = resolve(config.base_dir, value);
        } else if (key == "scene") {
            config.scene_paths.push_back(resolve(config.base_dir, value));
        } else if (key == "expectations") {
            config.expectations_path = resolve(config.base_dir, value);
        } else if (key == "output_dir") {
            config.output_dir = resolve(config.base_dir, value);
        } else if (key == "record_all_traces") {
            if (value != "true" && value != "false")
                throw ConfigError("record_all_traces must be true or false, got " + value);
            config.record_all_traces = value == "true";
        } else if (key == "behavior_predicates") {
            if (!have_behavior) {
                config.behavior_predicates.clear();
                have_behavior = true;
            }
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ','))
                if (std::string t = trim(item); !t.empty()) config.behavior_predicates.insert(t);
        } else {
            throw ConfigError(config_file.string() + ":" + std::to_string(line.number) +
                              ": unknown key " + key);
        }
    }

    auto require = [&](const std::filesystem::path& p, const char* what) {
        if (p.empty()) throw ConfigError(std::string("project file lacks ") + what);
        if (!std::filesystem::exists(p))
            throw ConfigError(std::string(what) + " does not resolve: " + p.string());
    };
    require(config.ontology_path, "ontology");
    require(config.rules_path, "rules");
    require(config.sources_path, "sources");
    require(config.expectations_path, "expectations");
    if (config.scene_paths.empty()) throw ConfigError("project file lists no scenes");
    for (const auto& p : config.scene_paths) require(p, "scene");
    if (config.output_dir.empty()) throw ConfigError("project file lacks output_dir");
    return config;
}

const Scene* LoadedProject::find_scene(const std::string& scenario_id) const {
    for (const auto& scene : scenes)
        if (scene.scenario_id == scenario_id) return &scene;
    return nullptr;
}

LoadedProject load_all(const ProjectConfig& config) {
    LoadedProject project;
    project.config = config;
    project.ontology = load_ontology_file(config.ontology_path);
    project.catalog = load_rules_file(config.rules_path);
    project.ledger = load_sources_file(config.sources_path);
    for (const auto& path : config.scene_paths)
        project.scenes.push_back(load_scene_file(path));
    project.expectations = load_expectations_file(config.expectations_path);
    return project;
}

} // namespace nba
