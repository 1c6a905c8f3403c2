/*
  Bottom-up evaluation of the rule catalog over one scene.

  Both strategies share the same matcher and differ only in which fact pool
  feeds each body position:

    naive      every round re-matches all rules against the full fact set;
               instantiations already applied are skipped via a seen-set.
    semi-naive each instantiation must touch at least one fact of the last
               round's delta, so it is found exactly once and no seen-set
               is needed.

  After every round the newly inserted facts are closed under the taxonomy
  (ancestors of derived class assertions) and under symmetric properties;
  those closure facts join the next delta. Candidate instantiations of a
  round are sorted by (rule index, head index, bindings), which fixes the
  first-derivation trace independently of container internals.
*/

#include "nba/engine.hpp"

#include "nba/errors.hpp"

#include <algorithm>
#include <sstream>

namespace nba {

std::string origin_name(FactOrigin origin) {
    switch (origin) {
    case FactOrigin::Asserted: return "asserted";
    case FactOrigin::Closure: return "closure";
    default: return "derived";
    }
}

std::string format_bindings(const Bindings& bindings) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, value] : bindings) {
        if (!first) out += ", ";
        first = false;
        out += var + "=";
        if (const Individual* ind = std::get_if<Individual>(&value))
            out += ind->name;
        else
            out += format_literal(std::get<Literal>(value));
    }
    return out + "}";
}

std::string base_rule_id(const std::string& trace_rule_id) {
    auto pos = trace_rule_id.find('#');
    return pos == std::string::npos ? trace_rule_id : trace_rule_id.substr(0, pos);
}

FactOrigin FactBase::origin(const GroundFact& fact) const {
    auto it = origins_.find(fact);
    if (it == origins_.end()) throw UnknownFactError(fact.to_string());
    return it->second;
}

const std::vector<DerivationTrace>* FactBase::traces(const GroundFact& fact) const {
    auto it = traces_.find(fact);
    return it == traces_.end() ? nullptr : &it->second;
}

const DerivationTrace& FactBase::first_trace(const GroundFact& fact) const {
    const auto* list = traces(fact);
    if (!list || list->empty()) throw UnknownFactError(fact.to_string());
    return list->front();
}

std::vector<GroundFact> FactBase::facts_with_origin(FactOrigin origin) const {
    std::vector<GroundFact> out;
    for (const auto& fact : facts_)
        if (origins_.at(fact) == origin) out.push_back(fact);
    return out;
}

std::string FactBase::dump() const {
    std::vector<std::string> lines;
    lines.reserve(facts_.size());
    for (const auto& fact : facts_) {
        std::string line = origin_name(origins_.at(fact)) + " " + fact.to_string();
        if (origins_.at(fact) == FactOrigin::Derived) {
            const DerivationTrace& trace = first_trace(fact);
            line += " rule=" + trace.rule_id + " bindings=" + format_bindings(trace.bindings);
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += "\n";
    }
    return out;
}

bool FactBase::insert(const GroundFact& fact, FactOrigin origin) {
    if (!facts_.insert(fact).second) return false;
    origins_.emplace(fact, origin);
    return true;
}

void FactBase::add_trace(DerivationTrace trace) {
    traces_[trace.fact].push_back(std::move(trace));
}

namespace {

// ---------------------------------------------------------------------------
// Rule compilation

struct CompiledAtom {
    FactKind kind{FactKind::ClassAssertion};
    std::string predicate;
    std::vector<Term> args;
};

struct CompiledRule {
    std::string id; // original id, or id#k for the k-th head of a multi-head rule
    std::vector<CompiledAtom> body;
    CompiledAtom head;
};

CompiledAtom compile_atom(const Ontology& ontology, const Atom& atom, const std::string& rule_id) {
    CompiledAtom out;
    out.predicate = atom.predicate;
    out.args = atom.args;
    if (atom.args.size() == 1) {
        if (!ontology.find_class(atom.predicate))
            throw UnknownSymbolError(atom.predicate, "class atom in rule " + rule_id);
        out.kind = FactKind::ClassAssertion;
        return out;
    }
    if (ontology.find_obj_prop(atom.predicate)) {
        out.kind = FactKind::ObjectFact;
    } else if (ontology.find_data_prop(atom.predicate)) {
        out.kind = FactKind::DataFact;
    } else {
        throw UnknownSymbolError(atom.predicate, "property atom in rule " + rule_id);
    }
    return out;
}

std::vector<CompiledRule> compile_catalog(const Ontology& ontology, const RuleCatalog& catalog) {
    std::vector<CompiledRule> out;
    for (const auto& rule : catalog.rules) {
        if (!rule.formalized()) continue;
        std::vector<CompiledAtom> body;
        body.reserve(rule.body.size());
        for (const auto& atom : rule.body) body.push_back(compile_atom(ontology, atom, rule.id));
        for (std::size_t k = 0; k < rule.head.size(); ++k) {
            CompiledRule compiled;
            compiled.id =
                rule.head.size() == 1 ? rule.id : rule.id + "#" + std::to_string(k + 1);
            compiled.body = body;
            compiled.head = compile_atom(ontology, rule.head[k], rule.id);
            out.push_back(std::move(compiled));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Matching

bool unify_individual(const Term& term, const std::string& name, Bindings& bindings) {
    if (const Individual* ind = std::get_if<Individual>(&term)) return ind->name == name;
    if (const Variable* var = std::get_if<Variable>(&term)) {
        auto it = bindings.find(var->name);
        if (it == bindings.end()) {
            bindings.emplace(var->name, Individual{name});
            return true;
        }
        const Individual* bound = std::get_if<Individual>(&it->second);
        return bound && bound->name == name;
    }
    return false; // literal in individual position
}

bool unify_literal(const Term& term, const Literal& value, Bindings& bindings) {
    if (const Literal* lit = std::get_if<Literal>(&term)) return *lit == value;
    if (const Variable* var = std::get_if<Variable>(&term)) {
        auto it = bindings.find(var->name);
        if (it == bindings.end()) {
            bindings.emplace(var->name, value);
            return true;
        }
        const Literal* bound = std::get_if<Literal>(&it->second);
        return bound && *bound == value;
    }
    return false;
}

bool unify(const CompiledAtom& atom, const GroundFact& fact, Bindings& bindings) {
    if (fact.kind != atom.kind || fact.predicate != atom.predicate) return false;
    if (!unify_individual(atom.args[0], fact.subject, bindings)) return false;
    if (atom.kind == FactKind::ObjectFact)
        return unify_individual(atom.args[1], fact.object_individual(), bindings);
    if (atom.kind == FactKind::DataFact)
        return unify_literal(atom.args[1], fact.object_literal(), bindings);
    return true;
}

GroundFact substitute(const CompiledAtom& atom, const Bindings& bindings,
                      const std::string& rule_id) {
    auto ground_individual = [&](const Term& term) -> std::string {
        if (const Individual* ind = std::get_if<Individual>(&term)) return ind->name;
        const Variable& var = std::get<Variable>(term);
        return std::get<Individual>(bindings.at(var.name)).name;
    };
    switch (atom.kind) {
    case FactKind::ClassAssertion:
        return GroundFact::class_assertion(atom.predicate, ground_individual(atom.args[0]));
    case FactKind::ObjectFact:
        return GroundFact::object_fact(atom.predicate, ground_individual(atom.args[0]),
                                       ground_individual(atom.args[1]));
    default: {
        const Term& value = atom.args[1];
        Literal lit;
        if (const Literal* direct = std::get_if<Literal>(&value)) {
            lit = *direct;
        } else {
            const Variable& var = std::get<Variable>(value);
            const Literal* bound = std::get_if<Literal>(&bindings.at(var.name));
            if (!bound)
                throw Error("rule " + rule_id + ": variable " + var.name +
                            " is bound to an individual in a literal position");
            lit = *bound;
        }
        return GroundFact::data_fact(atom.predicate, ground_individual(atom.args[0]), lit);
    }
    }
}

// One rule instantiation found in a round.
struct Candidate {
    std::size_t rule_index;
    Bindings bindings;

    bool operator<(const Candidate& other) const {
        if (rule_index != other.rule_index) return rule_index < other.rule_index;
        return format_bindings(bindings) < format_bindings(other.bindings);
    }
    bool operator==(const Candidate& other) const {
        return rule_index == other.rule_index && bindings == other.bindings;
    }
};

// Enumerates bindings of `rule.body` against `facts`; when `delta` is given,
// the atom at `delta_pos` must match inside it.
void enumerate(const CompiledRule& rule, std::size_t atom_index, const FactSet& facts,
               const FactSet* delta, std::size_t delta_pos, Bindings& bindings,
               std::vector<Bindings>& out) {
    if (atom_index == rule.body.size()) {
        out.push_back(bindings);
        return;
    }
    const FactSet& pool = (delta && atom_index == delta_pos) ? *delta : facts;
    const CompiledAtom& atom = rule.body[atom_index];
    for (const auto& fact : pool) {
        Bindings attempt = bindings;
        if (!unify(atom, fact, attempt))
            continue;
        enumerate(rule, atom_index + 1, facts, delta, delta_pos, attempt, out);
    }
}

// ---------------------------------------------------------------------------
// Shared driver

struct EngineContext {
    const Ontology& ontology;
    TaxonomyClosure taxonomy;
    std::set<std::string> symmetric_props;
    std::vector<CompiledRule> rules;
};

EngineContext make_context(const Ontology& ontology, const RuleCatalog& catalog) {
    EngineContext ctx{ontology, taxonomy_closure(ontology), {}, compile_catalog(ontology, catalog)};
    for (const auto& prop : ontology.obj_props())
        if (prop.symmetric) ctx.symmetric_props.insert(prop.name);
    return ctx;
}

// Ancestor assertions and symmetric reversals of `fresh`, inserted with
// closure origin; returns everything newly added. Facts over undeclared
// vocabulary stay inert: no taxonomy entry, no symmetry, no rule can match
// them (rule predicates are resolved against the ontology at compile time).
std::vector<GroundFact> close_facts(const EngineContext& ctx, FactBase& base,
                                    const std::vector<GroundFact>& fresh) {
    std::vector<GroundFact> added;
    for (const auto& fact : fresh) {
        if (fact.kind == FactKind::ClassAssertion) {
            auto it = ctx.taxonomy.find(fact.predicate);
            if (it == ctx.taxonomy.end()) continue;
            for (const auto& ancestor : it->second) {
                GroundFact up = GroundFact::class_assertion(ancestor, fact.subject);
                if (base.insert(up, FactOrigin::Closure)) added.push_back(std::move(up));
            }
        } else if (fact.kind == FactKind::ObjectFact &&
                   ctx.symmetric_props.count(fact.predicate)) {
            GroundFact rev = GroundFact::object_fact(fact.predicate, fact.object_individual(),
                                                     fact.subject);
            if (base.insert(rev, FactOrigin::Closure)) added.push_back(std::move(rev));
        }
    }
    return added;
}

FactBase initial_base(const EngineContext& ctx, const Scene& scene) {
    FactBase base;
    std::vector<GroundFact> fresh;
    for (const auto& [name, cls] : scene.individuals) {
        GroundFact assertion = GroundFact::class_assertion(cls, name);
        if (base.insert(assertion, FactOrigin::Asserted)) fresh.push_back(std::move(assertion));
    }
    for (const auto& fact : scene.facts)
        if (base.insert(fact, FactOrigin::Asserted)) fresh.push_back(fact);
    close_facts(ctx, base, fresh);
    return base;
}

InferenceResult run_engine(const Ontology& ontology, const Scene& scene,
                           const RuleCatalog& catalog, const InferenceOptions& options,
                           bool semi_naive) {
    EngineContext ctx = make_context(ontology, catalog);
    FactBase base = initial_base(ctx, scene);

    FactSet delta = base.facts();
    std::set<std::pair<std::size_t, std::string>> applied; // naive mode only

    while (true) {
        std::vector<Candidate> candidates;
        for (std::size_t r = 0; r < ctx.rules.size(); ++r) {
            const CompiledRule& rule = ctx.rules[r];
            std::vector<Bindings> found;
            if (semi_naive) {
                for (std::size_t pos = 0; pos < rule.body.size(); ++pos) {
                    Bindings empty;
                    enumerate(rule, 0, base.facts(), &delta, pos, empty, found);
                }
            } else {
                Bindings empty;
                enumerate(rule, 0, base.facts(), nullptr, 0, empty, found);
            }
            for (auto& bindings : found) candidates.push_back({r, std::move(bindings)});
        }

        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        std::vector<GroundFact> fresh;
        for (const auto& candidate : candidates) {
            const CompiledRule& rule = ctx.rules[candidate.rule_index];
            if (!semi_naive &&
                !applied.insert({candidate.rule_index, format_bindings(candidate.bindings)})
                     .second)
                continue;

            GroundFact fact = substitute(rule.head, candidate.bindings, rule.id);
            bool inserted = base.insert(fact, FactOrigin::Derived);
            bool record = inserted ||
                          (options.record_all_traces &&
                           base.origin(fact) == FactOrigin::Derived);
            if (record) {
                DerivationTrace trace;
                trace.fact = fact;
                trace.rule_id = rule.id;
                trace.bindings = candidate.bindings;
                for (const auto& atom : rule.body)
                    trace.premises.push_back(substitute(atom, candidate.bindings, rule.id));
                base.add_trace(std::move(trace));
            }
            if (inserted) fresh.push_back(std::move(fact));
        }

        std::vector<GroundFact> closure_added = close_facts(ctx, base, fresh);
        fresh.insert(fresh.end(), closure_added.begin(), closure_added.end());
        if (fresh.empty()) break;
        delta = FactSet(fresh.begin(), fresh.end());
    }

    InferenceResult result;
    result.inconsistencies = check_consistency(ontology, scene, base.facts());
    result.factbase = std::move(base);
    return result;
}

} // namespace

InferenceResult infer(const Ontology& ontology, const Scene& scene, const RuleCatalog& catalog,
                      const InferenceOptions& options) {
    return run_engine(ontology, scene, catalog, options, true);
}

InferenceResult naive_infer(const Ontology& ontology, const Scene& scene,
                            const RuleCatalog& catalog, const InferenceOptions& options) {
    return run_engine(ontology, scene, catalog, options, false);
}

DerivationTree explain(const FactBase& factbase, const GroundFact& fact) {
    if (!factbase.contains(fact)) throw UnknownFactError(fact.to_string());
    DerivationTree tree;
    tree.fact = fact;
    tree.origin = factbase.origin(fact);
    if (tree.origin != FactOrigin::Derived) return tree;
    const DerivationTrace& trace = factbase.first_trace(fact);
    tree.rule_id = trace.rule_id;
    tree.bindings = trace.bindings;
    for (const auto& premise : trace.premises) tree.premises.push_back(explain(factbase, premise));
    return tree;
}

namespace {

void format_tree_rec(const DerivationTree& tree, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += tree.fact.to_string();
    if (tree.origin == FactOrigin::Derived)
        out += "  (derived, rule " + tree.rule_id + ")";
    else
        out += "  (" + origin_name(tree.origin) + ")";
    out += "\n";
    for (const auto& premise : tree.premises) format_tree_rec(premise, depth + 1, out);
}

} // namespace

std::string format_tree(const DerivationTree& tree) {
    std::string out;
    format_tree_rec(tree, 0, out);
    return out;
}

} // namespace nba
