#pragma once

#include "nba/fact.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nba {

struct ClassDecl {
    std::string name;
    std::optional<std::string> parent;
};

struct ObjPropDecl {
    std::string name;
    std::optional<std::string> domain;
    std::optional<std::string> range;
    bool symmetric{false};
};

struct DataPropDecl {
    std::string name;
    std::optional<std::string> domain;
    LiteralKind range{LiteralKind::Bool};
};

// The TBox: class taxonomy (single inheritance), property declarations and
// class disjointness. Immutable after validate(); declaration order is kept.
class Ontology {
public:
    void add_class(ClassDecl decl);
    void add_obj_prop(ObjPropDecl decl);
    void add_data_prop(DataPropDecl decl);
    void add_disjoint(const std::string& a, const std::string& b);

    const std::vector<ClassDecl>& classes() const { return classes_; }
    const std::vector<ObjPropDecl>& obj_props() const { return obj_props_; }
    const std::vector<DataPropDecl>& data_props() const { return data_props_; }
    const std::set<std::pair<std::string, std::string>>& disjoint_pairs() const {
        return disjoint_pairs_;
    }

    const ClassDecl* find_class(const std::string& name) const;
    const ObjPropDecl* find_obj_prop(const std::string& name) const;
    const DataPropDecl* find_data_prop(const std::string& name) const;
    bool has_property(const std::string& name) const;

    // Unique names, resolvable references, acyclic taxonomy.
    // Throws Error or CycleError.
    void validate() const;

private:
    std::vector<ClassDecl> classes_;
    std::vector<ObjPropDecl> obj_props_;
    std::vector<DataPropDecl> data_props_;
    std::set<std::pair<std::string, std::string>> disjoint_pairs_;
    std::map<std::string, std::size_t> class_index_;
    std::map<std::string, std::size_t> obj_index_;
    std::map<std::string, std::size_t> data_index_;
};

using TaxonomyClosure = std::map<std::string, std::set<std::string>>;

// ancestors(C) = all classes reachable via parent links, excluding C.
// Throws CycleError when parent links loop.
TaxonomyClosure taxonomy_closure(const Ontology& ontology);

Ontology parse_ontology(std::string_view text, const std::string& filename = "<ontology>");
Ontology load_ontology_file(const std::filesystem::path& path);

enum class InconsistencyKind { DisjointnessViolation, BooleanContradiction };

struct Inconsistency {
    InconsistencyKind kind{InconsistencyKind::DisjointnessViolation};
    std::string individual;
    // DisjointnessViolation: the two disjoint classes.
    // BooleanContradiction: `a` holds the property name, `b` is empty.
    std::string a;
    std::string b;

    std::string to_string() const;
    auto operator<=>(const Inconsistency&) const = default;
};

} // namespace nba
