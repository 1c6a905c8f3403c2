#pragma once

#include "nba/fact.hpp"
#include "nba/ontology.hpp"
#include "nba/rule.hpp"
#include "nba/scene.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nba {

enum class FactOrigin { Asserted, Closure, Derived };

std::string origin_name(FactOrigin origin);

using BoundTerm = std::variant<Individual, Literal>;
using Bindings = std::map<std::string, BoundTerm>; // variable -> ground value

std::string format_bindings(const Bindings& bindings);

// Records how one derived fact came about: substituting `bindings` into the
// body of rule `rule_id` yields exactly `premises`; substituting into its
// head yields `fact`. Multi-atom heads are desugared to one internal rule
// per head atom, id suffixed "#k".
struct DerivationTrace {
    GroundFact fact;
    std::string rule_id;
    Bindings bindings;
    std::vector<GroundFact> premises;
};

// Base id of a possibly desugared trace rule id ("R4#2" -> "R4").
std::string base_rule_id(const std::string& trace_rule_id);

class FactBase {
public:
    bool contains(const GroundFact& fact) const { return facts_.count(fact) > 0; }
    const FactSet& facts() const { return facts_; }
    std::size_t size() const { return facts_.size(); }

    FactOrigin origin(const GroundFact& fact) const; // throws UnknownFactError
    const std::vector<DerivationTrace>* traces(const GroundFact& fact) const;
    const DerivationTrace& first_trace(const GroundFact& fact) const; // derived facts only

    std::vector<GroundFact> facts_with_origin(FactOrigin origin) const;

    // One line per fact, lexicographically sorted:
    //   derived|asserted|closure <fact> [rule=<id> bindings={...}]
    std::string dump() const;

    bool insert(const GroundFact& fact, FactOrigin origin);
    void add_trace(DerivationTrace trace);

private:
    FactSet facts_;
    std::map<GroundFact, FactOrigin> origins_;
    std::map<GroundFact, std::vector<DerivationTrace>> traces_;
};

struct InferenceOptions {
    bool record_all_traces{false};
};

struct InferenceResult {
    FactBase factbase;
    // Nonempty means the fixpoint is inconsistent; the fact base is still
    // populated for diagnosis.
    std::vector<Inconsistency> inconsistencies;

    bool consistent() const { return inconsistencies.empty(); }
};

// Semi-naive (delta-driven) bottom-up evaluation to the least fixpoint of
// scene facts + membership closure + symmetric closure under all formalized
// rules. Deterministic: within a round, instantiations apply in rule-file
// order, then lexicographic binding order. Scene facts over undeclared
// vocabulary stay in the base as inert assertions; rule predicates must
// resolve (UnknownSymbolError otherwise; validate the catalog first).
InferenceResult infer(const Ontology& ontology, const Scene& scene, const RuleCatalog& catalog,
                      const InferenceOptions& options = {});

// Brute-force oracle: re-matches every rule against the full fact set each
// round. Same fact set as infer by construction of the tests, not by
// shared code.
InferenceResult naive_infer(const Ontology& ontology, const Scene& scene,
                            const RuleCatalog& catalog, const InferenceOptions& options = {});

struct DerivationTree {
    GroundFact fact;
    FactOrigin origin{FactOrigin::Asserted};
    std::string rule_id; // empty unless derived
    Bindings bindings;
    std::vector<DerivationTree> premises;
};

// Tree rooted at `fact` following first traces; asserted and closure facts
// are leaves. Throws UnknownFactError if the fact is not in the base.
DerivationTree explain(const FactBase& factbase, const GroundFact& fact);

std::string format_tree(const DerivationTree& tree);

} // namespace nba
