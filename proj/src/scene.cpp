#include "nba/scene.hpp"

#include "nba/errors.hpp"
#include "scan.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace nba {

const std::string* Scene::class_of(const std::string& individual) const {
    for (const auto& [name, cls] : individuals)
        if (name == individual) return &cls;
    return nullptr;
}

bool Scene::has_individual(const std::string& name) const {
    return class_of(name) != nullptr;
}

Scene parse_scene(std::string_view text, const std::string& filename) {
    Scene scene;
    bool have_header = false;
    for (const auto& line : detail::logical_lines(text)) {
        detail::LineScanner s(line, filename);
        if (s.try_eat_keyword("scenario")) {
            if (have_header) s.fail("duplicate scenario header", {});
            scene.scenario_id = s.expect_identifier("scenario id");
            scene.title = s.expect_string("title");
            s.expect_end();
            have_header = true;
        } else if (s.try_eat_keyword("individual")) {
            if (!have_header) s.fail("scenario header must come first", {"scenario"});
            std::string name = s.expect_identifier("individual name");
            s.expect_char(':');
            std::string cls = s.expect_identifier("class name");
            s.expect_end();
            if (scene.has_individual(name))
                s.fail("duplicate individual '" + name + "'", {});
            scene.individuals.emplace_back(std::move(name), std::move(cls));
        } else if (s.try_eat_keyword("fact")) {
            if (!have_header) s.fail("scenario header must come first", {"scenario"});
            std::string predicate = s.expect_identifier("property name");
            s.expect_char('(');
            std::string subject = s.expect_identifier("individual name");
            s.expect_char(',');
            GroundFact fact;
            if (s.looks_at_string()) {
                fact = GroundFact::data_fact(predicate, subject, Literal{s.expect_string()});
            } else if (s.looks_at_int()) {
                fact = GroundFact::data_fact(predicate, subject, Literal{s.expect_int()});
            } else {
                std::string arg = s.expect_identifier("individual or literal");
                if (arg == "true" || arg == "false")
                    fact = GroundFact::data_fact(predicate, subject, Literal{arg == "true"});
                else
                    fact = GroundFact::object_fact(predicate, subject, std::move(arg));
            }
            s.expect_char(')');
            s.expect_end();
            scene.facts.push_back(std::move(fact));
        } else {
            s.fail("unknown statement", {"scenario", "individual", "fact"});
        }
    }
    if (!have_header)
        throw ParseError(filename, 1, 1, "scene file lacks a scenario header", {"scenario"});
    return scene;
}

Scene load_scene_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open scene file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path.filename().string());
}

std::string SceneIssue::to_string() const {
    if (kind == Kind::KindMismatch) return "kind mismatch: " + context;
    std::string what;
    switch (symbol_kind) {
    case SymbolKind::Class: what = "class"; break;
    case SymbolKind::Property: what = "property"; break;
    case SymbolKind::Individual: what = "individual"; break;
    }
    return "unknown " + what + " '" + symbol + "' (" + context + ")";
}

std::vector<SceneIssue> check_scene(const Ontology& ontology, const Scene& scene) {
    std::vector<SceneIssue> issues;
    auto unknown = [&](SymbolKind kind, std::string symbol, std::string context) {
        issues.push_back(
            {SceneIssue::Kind::UnknownSymbol, kind, std::move(symbol), std::move(context)});
    };
    auto mismatch = [&](std::string context) {
        issues.push_back(
            {SceneIssue::Kind::KindMismatch, SymbolKind::Property, "", std::move(context)});
    };

    for (const auto& [name, cls] : scene.individuals)
        if (!ontology.find_class(cls))
            unknown(SymbolKind::Class, cls, "individual " + name);

    for (const auto& fact : scene.facts) {
        const std::string context = "fact " + fact.to_string();
        if (!scene.has_individual(fact.subject))
            unknown(SymbolKind::Individual, fact.subject, context);
        const ObjPropDecl* obj = ontology.find_obj_prop(fact.predicate);
        const DataPropDecl* data = ontology.find_data_prop(fact.predicate);
        if (!obj && !data) {
            unknown(SymbolKind::Property, fact.predicate, context);
            continue;
        }
        if (fact.kind == FactKind::ObjectFact) {
            if (!scene.has_individual(fact.object_individual()))
                unknown(SymbolKind::Individual, fact.object_individual(), context);
            if (!obj)
                mismatch(fact.predicate + " is a data property but " + context.substr(5) +
                         " names an individual");
        } else if (fact.kind == FactKind::DataFact) {
            if (!data)
                mismatch(fact.predicate + " is an object property but " + context.substr(5) +
                         " carries a literal");
            else if (kind_of(fact.object_literal()) != data->range)
                mismatch(context.substr(5) + " has a " +
                         literal_kind_name(kind_of(fact.object_literal())) + " value; range of " +
                         fact.predicate + " is " + literal_kind_name(data->range));
        }
    }
    return issues;
}

FactSet membership_closure(const Ontology& ontology, const Scene& scene) {
    TaxonomyClosure tax = taxonomy_closure(ontology);
    FactSet out;
    for (const auto& [name, cls] : scene.individuals) {
        auto it = tax.find(cls);
        if (it == tax.end())
            throw UnknownSymbolError(cls, "class of individual " + name);
        out.insert(GroundFact::class_assertion(cls, name));
        for (const auto& ancestor : it->second)
            out.insert(GroundFact::class_assertion(ancestor, name));
    }
    return out;
}

std::vector<Inconsistency> check_consistency(const Ontology& ontology, const Scene& scene,
                                             const FactSet& facts) {
    (void)scene; // memberships are read from the closed fact set
    std::vector<Inconsistency> out;

    std::map<std::string, std::set<std::string>> memberships;
    for (const auto& fact : facts)
        if (fact.kind == FactKind::ClassAssertion)
            memberships[fact.subject].insert(fact.predicate);
    for (const auto& [individual, classes] : memberships)
        for (const auto& [a, b] : ontology.disjoint_pairs())
            if (classes.count(a) && classes.count(b))
                out.push_back({InconsistencyKind::DisjointnessViolation, individual, a, b});

    // Bool-ranged data properties are functional: two distinct values for the
    // same subject contradict.
    std::map<std::pair<std::string, std::string>, std::set<bool>> bool_values;
    for (const auto& fact : facts) {
        if (fact.kind != FactKind::DataFact) continue;
        const DataPropDecl* decl = ontology.find_data_prop(fact.predicate);
        if (!decl || decl->range != LiteralKind::Bool) continue;
        if (const bool* v = std::get_if<bool>(&fact.object_literal()))
            bool_values[{fact.subject, fact.predicate}].insert(*v);
    }
    for (const auto& [key, values] : bool_values)
        if (values.size() > 1)
            out.push_back({InconsistencyKind::BooleanContradiction, key.first, key.second, ""});

    std::sort(out.begin(), out.end());
    return out;
}

} // namespace nba
