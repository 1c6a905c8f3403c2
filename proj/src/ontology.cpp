#include "nba/ontology.hpp"

#include "nba/errors.hpp"
#include "scan.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nba {

void Ontology::add_class(ClassDecl decl) {
    class_index_.emplace(decl.name, classes_.size());
    classes_.push_back(std::move(decl));
}

void Ontology::add_obj_prop(ObjPropDecl decl) {
    obj_index_.emplace(decl.name, obj_props_.size());
    obj_props_.push_back(std::move(decl));
}

void Ontology::add_data_prop(DataPropDecl decl) {
    data_index_.emplace(decl.name, data_props_.size());
    data_props_.push_back(std::move(decl));
}

void Ontology::add_disjoint(const std::string& a, const std::string& b) {
    disjoint_pairs_.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
}

const ClassDecl* Ontology::find_class(const std::string& name) const {
    auto it = class_index_.find(name);
    return it == class_index_.end() ? nullptr : &classes_[it->second];
}

const ObjPropDecl* Ontology::find_obj_prop(const std::string& name) const {
    auto it = obj_index_.find(name);
    return it == obj_index_.end() ? nullptr : &obj_props_[it->second];
}

const DataPropDecl* Ontology::find_data_prop(const std::string& name) const {
    auto it = data_index_.find(name);
    return it == data_index_.end() ? nullptr : &data_props_[it->second];
}

bool Ontology::has_property(const std::string& name) const {
    return find_obj_prop(name) || find_data_prop(name);
}

void Ontology::validate() const {
    std::set<std::string> class_names;
    for (const auto& c : classes_) {
        if (!class_names.insert(c.name).second)
            throw Error("duplicate class declaration: " + c.name);
        if (c.parent && *c.parent == c.name)
            throw CycleError({c.name});
    }
    std::set<std::string> prop_names;
    for (const auto& p : obj_props_)
        if (!prop_names.insert(p.name).second)
            throw Error("duplicate property declaration: " + p.name);
    for (const auto& p : data_props_)
        if (!prop_names.insert(p.name).second)
            throw Error("duplicate property declaration: " + p.name);

    for (const auto& c : classes_)
        if (c.parent && !find_class(*c.parent))
            throw Error("class " + c.name + " names undeclared parent " + *c.parent);
    for (const auto& p : obj_props_) {
        if (p.domain && !find_class(*p.domain))
            throw Error("property " + p.name + " names undeclared domain " + *p.domain);
        if (p.range && !find_class(*p.range))
            throw Error("property " + p.name + " names undeclared range " + *p.range);
    }
    for (const auto& p : data_props_)
        if (p.domain && !find_class(*p.domain))
            throw Error("property " + p.name + " names undeclared domain " + *p.domain);

    for (const auto& [a, b] : disjoint_pairs_) {
        if (!find_class(a)) throw Error("disjointness names undeclared class " + a);
        if (!find_class(b)) throw Error("disjointness names undeclared class " + b);
    }

    taxonomy_closure(*this); // DAG check
}

TaxonomyClosure taxonomy_closure(const Ontology& ontology) {
    TaxonomyClosure closure;
    for (const auto& decl : ontology.classes()) {
        std::set<std::string> ancestors;
        std::vector<std::string> path{decl.name};
        const ClassDecl* cur = &decl;
        while (cur->parent) {
            const std::string& parent = *cur->parent;
            if (std::find(path.begin(), path.end(), parent) != path.end()) {
                // Report the cycle members in path order starting at the
                // re-visited class.
                auto at = std::find(path.begin(), path.end(), parent);
                throw CycleError(std::vector<std::string>(at, path.end()));
            }
            ancestors.insert(parent);
            path.push_back(parent);
            const ClassDecl* next = ontology.find_class(parent);
            if (!next) throw UnknownSymbolError(parent, "parent of class " + cur->name);
            cur = next;
        }
        closure.emplace(decl.name, std::move(ancestors));
    }
    return closure;
}

namespace {

LiteralKind parse_range_kind(detail::LineScanner& s) {
    std::string word = s.expect_identifier("bool, int or string");
    if (word == "bool") return LiteralKind::Bool;
    if (word == "int") return LiteralKind::Int;
    if (word == "string") return LiteralKind::String;
    s.fail("unknown literal kind '" + word + "'", {"bool", "int", "string"});
}

} // namespace

Ontology parse_ontology(std::string_view text, const std::string& filename) {
    Ontology onto;
    for (const auto& line : detail::logical_lines(text)) {
        detail::LineScanner s(line, filename);
        if (s.try_eat_keyword("class")) {
            ClassDecl decl;
            decl.name = s.expect_identifier("class name");
            if (s.try_eat_keyword("subclass_of"))
                decl.parent = s.expect_identifier("parent class name");
            s.expect_end();
            onto.add_class(std::move(decl));
        } else if (s.try_eat_keyword("disjoint")) {
            std::string a = s.expect_identifier("class name");
            std::string b = s.expect_identifier("class name");
            s.expect_end();
            onto.add_disjoint(a, b);
        } else if (s.try_eat_keyword("objprop")) {
            ObjPropDecl decl;
            decl.name = s.expect_identifier("property name");
            if (s.try_eat_keyword("domain")) decl.domain = s.expect_identifier("class name");
            if (s.try_eat_keyword("range")) decl.range = s.expect_identifier("class name");
            if (s.try_eat_keyword("symmetric")) decl.symmetric = true;
            s.expect_end();
            onto.add_obj_prop(std::move(decl));
        } else if (s.try_eat_keyword("dataprop")) {
            DataPropDecl decl;
            decl.name = s.expect_identifier("property name");
            if (s.try_eat_keyword("domain")) decl.domain = s.expect_identifier("class name");
            s.expect_keyword("range");
            decl.range = parse_range_kind(s);
            s.expect_end();
            onto.add_data_prop(std::move(decl));
        } else {
            s.fail("unknown declaration", {"class", "disjoint", "objprop", "dataprop"});
        }
    }
    onto.validate();
    return onto;
}

Ontology load_ontology_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open ontology file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_ontology(buf.str(), path.filename().string());
}

std::string Inconsistency::to_string() const {
    if (kind == InconsistencyKind::BooleanContradiction)
        return "conflicting values of " + a + " for individual " + individual;
    return "individual " + individual + " is member of disjoint classes " + a + " and " + b;
}

} // namespace nba
