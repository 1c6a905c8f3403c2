#pragma once

#include "nba/engine.hpp"
#include "nba/ontology.hpp"
#include "nba/provenance.hpp"
#include "nba/rule.hpp"
#include "nba/scene.hpp"
#include "nba/verify.hpp"

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace nba {

// Batch-run configuration, loaded from a `key = value` file. Relative paths
// resolve against the config file's directory.
struct ProjectConfig {
    std::filesystem::path base_dir;
    std::filesystem::path ontology_path;
    std::filesystem::path rules_path;
    std::filesystem::path sources_path;
    std::vector<std::filesystem::path> scene_paths;
    std::filesystem::path expectations_path;
    std::filesystem::path output_dir;
    bool record_all_traces{false};
    std::set<std::string> behavior_predicates{"anhalten_in"};
};

// Throws ConfigError when a key is unknown, required keys are missing or an
// input path does not resolve.
ProjectConfig load_project(const std::filesystem::path& config_file);

struct LoadedProject {
    ProjectConfig config;
    Ontology ontology;
    RuleCatalog catalog;
    Ledger ledger;
    std::vector<Scene> scenes;
    std::vector<Expectation> expectations;

    const Scene* find_scene(const std::string& scenario_id) const;
};

LoadedProject load_all(const ProjectConfig& config);

} // namespace nba
