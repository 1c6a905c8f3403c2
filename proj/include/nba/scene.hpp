#pragma once

#include "nba/fact.hpp"
#include "nba/ontology.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace nba {

// The ABox of one scene of a functional scenario: named individuals with a
// single asserted class each (unique name assumption) plus ground property
// facts. Unknown vocabulary is tolerated here and surfaced by check_scene.
struct Scene {
    std::string scenario_id;
    std::string title;
    std::vector<std::pair<std::string, std::string>> individuals; // name -> class, file order
    std::vector<GroundFact> facts;                                // property facts, file order

    const std::string* class_of(const std::string& individual) const;
    bool has_individual(const std::string& name) const;
};

Scene parse_scene(std::string_view text, const std::string& filename = "<scene>");
Scene load_scene_file(const std::filesystem::path& path);

enum class SymbolKind { Class, Property, Individual };

struct SceneIssue {
    enum class Kind { UnknownSymbol, KindMismatch };
    Kind kind{Kind::UnknownSymbol};
    SymbolKind symbol_kind{SymbolKind::Class};
    std::string symbol;
    std::string context;

    std::string to_string() const;
};

// Reports unknown classes/properties/individuals and literal-kind mismatches.
// Never throws: a vocabulary hole is a finding, not a crash.
std::vector<SceneIssue> check_scene(const Ontology& ontology, const Scene& scene);

// Class assertions implied by the taxonomy: for individual i : C, one
// assertion D(i) for every D in {C} union ancestors(C).
// Throws UnknownSymbolError when an asserted class is undeclared.
FactSet membership_closure(const Ontology& ontology, const Scene& scene);

// Disjointness violations (over the closed class memberships contained in
// `facts`) and conflicting values of bool-ranged data properties, which
// admit at most one value per subject. Returns an empty list when
// consistent.
std::vector<Inconsistency> check_consistency(const Ontology& ontology, const Scene& scene,
                                             const FactSet& facts);

} // namespace nba
