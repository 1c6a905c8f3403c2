#pragma once

#include "nba/fact.hpp"
#include "nba/ontology.hpp"
#include "nba/scene.hpp"

#include <compare>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nba {

struct Variable {
    std::string name; // includes the leading '?'
    auto operator<=>(const Variable&) const = default;
};

struct Individual {
    std::string name;
    auto operator<=>(const Individual&) const = default;
};

using Term = std::variant<Variable, Individual, Literal>;

std::string format_term(const Term& term);

enum class AtomKind { Class, ObjProp, DataProp };

// One body or head conjunct. The kind is assigned syntactically at parse
// time (unary -> Class, binary with literal second argument -> DataProp,
// binary otherwise -> ObjProp); validate_against_ontology checks it against
// the declarations.
struct Atom {
    AtomKind kind{AtomKind::Class};
    std::string predicate;
    std::vector<Term> args;

    std::string to_string() const;
    bool operator==(const Atom&) const = default;
};

struct SourceLink {
    std::string doc;
    std::string locator;
    std::string quote;
    bool operator==(const SourceLink&) const = default;
};

// A Horn rule with provenance. A rule without when/then clauses is a
// gloss-only (semi-formal) entry; the engine skips it.
struct Rule {
    std::string id;
    std::string gloss;
    std::vector<SourceLink> source_links;
    std::vector<std::string> assumption_links;
    std::vector<Atom> body;
    std::vector<Atom> head;

    bool formalized() const { return !body.empty(); }
    bool operator==(const Rule&) const = default;
};

struct RuleCatalog {
    std::vector<Rule> rules;

    const Rule* find(const std::string& id) const;
    std::size_t formalized_count() const;
    bool operator==(const RuleCatalog&) const = default;
};

// Throws ParseError (position + expected-token set) and UnsafeVariableError.
RuleCatalog parse_rules(std::string_view text, const std::string& filename = "<rules>");
RuleCatalog load_rules_file(const std::filesystem::path& path);

// Canonical form; parse(print_rules(c)) reproduces c exactly.
std::string print_rules(const RuleCatalog& catalog);

struct ValidationIssue {
    enum class Kind { UnknownConcept, KindMismatch };
    Kind kind{Kind::UnknownConcept};
    std::string rule_id;
    std::string symbol; // the unresolved predicate for UnknownConcept
    std::string detail;

    std::string to_string() const;
};

// Reports every atom whose predicate is undeclared, class atoms naming a
// property (and vice versa), literal kinds off the declared range, and
// variables used with conflicting sorts. Empty result = vocabulary-complete.
std::vector<ValidationIssue> validate_against_ontology(const RuleCatalog& catalog,
                                                       const Ontology& ontology);

struct LintFinding {
    enum class Kind {
        DuplicateId,
        RedundantRule,
        DeadVocabulary,
        MissingProvenance,
    };
    Kind kind{Kind::DuplicateId};
    bool informational{false};
    std::string subject;
    std::string detail;

    std::string to_string() const;
};

std::vector<LintFinding> lint_catalog(const RuleCatalog& catalog, const Ontology& ontology,
                                      std::span<const Scene> scenes = {});

} // namespace nba
