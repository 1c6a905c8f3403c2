#pragma once

#include "nba/engine.hpp"
#include "nba/provenance.hpp"
#include "nba/rule.hpp"
#include "nba/scene.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace nba {

// Expert-supplied expected behavior for one scenario. A source_gap flag is
// the manual marker for knowledge-source doubt; it is never inferred.
struct Expectation {
    std::string scenario_id;
    std::vector<GroundFact> must_derive;
    std::vector<GroundFact> must_not_derive;
    bool source_gap_flag{false};
    std::string note;
};

std::vector<Expectation> parse_expectations(std::string_view text,
                                            const std::string& filename = "<expectations>");
std::vector<Expectation> load_expectations_file(const std::filesystem::path& path);

enum class FailureClass { RuleFault, ConceptGap, SourceGap };

std::string failure_class_name(FailureClass cls);

struct Evidence {
    enum class Kind {
        MissingExpected,
        ForbiddenDerived,
        UnknownSymbol,
        Inconsistent,
        ValidationIssue,
        ManualFlag,
    };
    Kind kind{Kind::MissingExpected};
    std::string detail;

    std::string to_string() const;
};

struct Verdict {
    std::string scenario_id;
    bool pass{false};
    std::optional<FailureClass> failure_class;
    std::vector<Evidence> evidence;
};

// PASS iff no unknown symbols anywhere, the fixpoint is consistent, every
// must fact is derived and no forbidden fact is. Classification precedence:
// CONCEPT_GAP (vocabulary hole, inference skipped) > RULE_FAULT > SOURCE_GAP
// (manual flag only).
Verdict verify_scenario(const Ontology& ontology, const RuleCatalog& catalog, const Scene& scene,
                        const Expectation& expectation, const Ledger& ledger);

struct UnverifiedInfo {
    std::string scenario_id;
    std::size_t derived_count{0};
    std::string skip_reason; // nonempty when inference could not run
};

struct CatalogReport {
    std::vector<Verdict> verdicts;        // scenario-id order
    std::vector<UnverifiedInfo> unverified;
    std::map<std::string, int> summary;   // PASS / RULE_FAULT / CONCEPT_GAP / SOURCE_GAP

    bool all_pass() const;
};

// One verdict per scenario with an expectation; scenarios without one are
// informational. Throws DuplicateScenarioError, and DanglingReferenceError
// for an expectation whose scenario does not exist.
CatalogReport verify_catalog(const Ontology& ontology, const RuleCatalog& catalog,
                             std::span<const Scene> scenes,
                             std::span<const Expectation> expectations, const Ledger& ledger);

std::string format_report(const CatalogReport& report);
nlohmann::json report_json(const CatalogReport& report);

} // namespace nba
