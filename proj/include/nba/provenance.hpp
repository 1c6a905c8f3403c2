#pragma once

#include "nba/engine.hpp"
#include "nba/rule.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nba {

struct SourceDoc {
    std::string id;
    std::string title;
    std::string edition;
};

struct PassageRef {
    std::string id;
    std::string doc;
    std::string locator;
    std::string quote; // verbatim, never paraphrased
};

enum class AssumptionStatus { Open, Supported, Refuted };

std::string status_name(AssumptionStatus status);

struct Assumption {
    std::string id;
    std::string statement;
    std::string justification;
    AssumptionStatus status{AssumptionStatus::Open};
};

// Registry of knowledge sources, quoted passages and explicit assumptions.
class Ledger {
public:
    void add_doc(SourceDoc doc);
    void add_passage(PassageRef passage);
    void add_assumption(Assumption assumption);

    const std::vector<SourceDoc>& docs() const { return docs_; }
    const std::vector<PassageRef>& passages() const { return passages_; }
    const std::vector<Assumption>& assumptions() const { return assumptions_; }

    const SourceDoc* find_doc(const std::string& id) const;
    const PassageRef* find_passage(const std::string& id) const;
    const Assumption* find_assumption(const std::string& id) const;

    // Passage referenced by a rule's source line: matched on (doc, locator).
    const PassageRef* resolve(const SourceLink& link) const;

    // Unique ids; every passage names a declared doc (DanglingReferenceError).
    void validate() const;

private:
    std::vector<SourceDoc> docs_;
    std::vector<PassageRef> passages_;
    std::vector<Assumption> assumptions_;
};

Ledger parse_sources(std::string_view text, const std::string& filename = "<sources>");
Ledger load_sources_file(const std::filesystem::path& path);

struct LinkIssue {
    enum class Kind { DanglingPassage, DanglingAssumption, QuoteMismatch, RefutedAssumptionUse };
    Kind kind{Kind::DanglingPassage};
    std::string rule_id;
    std::string detail;

    std::string to_string() const;
};

// Cross-file integrity of rule source/assumption links against the ledger.
// Quote drift between a rule's source line and the ledger passage is an
// error: quotes are stored verbatim on both sides.
std::vector<LinkIssue> check_catalog_links(const RuleCatalog& catalog, const Ledger& ledger);

struct TraceEntry {
    GroundFact fact;
    std::string rule_id; // base id
    Bindings bindings;
    std::vector<GroundFact> premises;
    std::vector<std::string> passage_ids;
    std::vector<std::string> assumption_ids;
};

// Closed, deterministic traceability report: every derived fact chained to
// its rule, the rule's passages (with verbatim quotes), their documents and
// the assumptions in force. Every id used by an entry is defined in the
// report's own sections.
struct TraceReport {
    std::vector<TraceEntry> entries; // sorted by fact
    std::vector<std::pair<std::string, std::string>> rules; // id -> gloss, referenced only
    std::vector<PassageRef> passages;
    std::vector<SourceDoc> docs;
    std::vector<Assumption> assumptions;
};

// Throws DanglingReferenceError when a rule on a derivation path cites an
// unknown passage or assumption. `restrict_to` limits the report to the
// given facts (used for single-fact trace chains); default covers every
// derived fact of the base.
TraceReport trace_report(const FactBase& factbase, const RuleCatalog& catalog,
                         const Ledger& ledger,
                         const std::optional<FactSet>& restrict_to = std::nullopt);

std::string format_trace_report(const TraceReport& report);
nlohmann::json trace_report_json(const TraceReport& report);

} // namespace nba
