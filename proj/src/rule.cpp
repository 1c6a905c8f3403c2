#include "nba/rule.hpp"

#include "nba/errors.hpp"
#include "scan.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nba {

std::string format_term(const Term& term) {
    if (const Variable* v = std::get_if<Variable>(&term)) return v->name;
    if (const Individual* i = std::get_if<Individual>(&term)) return i->name;
    return format_literal(std::get<Literal>(term));
}

std::string Atom::to_string() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += format_term(args[i]);
    }
    return out + ")";
}

const Rule* RuleCatalog::find(const std::string& id) const {
    for (const auto& rule : rules)
        if (rule.id == id) return &rule;
    return nullptr;
}

std::size_t RuleCatalog::formalized_count() const {
    std::size_t n = 0;
    for (const auto& rule : rules)
        if (rule.formalized()) ++n;
    return n;
}

namespace {

Term parse_term(detail::LineScanner& s) {
    if (s.looks_at_variable()) return Variable{s.expect_variable()};
    if (s.looks_at_string()) return Literal{s.expect_string()};
    if (s.looks_at_int()) return Literal{s.expect_int()};
    std::string name = s.expect_identifier("term");
    if (name == "true") return Literal{true};
    if (name == "false") return Literal{false};
    return Individual{std::move(name)};
}

Atom parse_atom(detail::LineScanner& s) {
    Atom atom;
    atom.predicate = s.expect_identifier("predicate");
    s.expect_char('(');
    atom.args.push_back(parse_term(s));
    if (s.try_eat(',')) atom.args.push_back(parse_term(s));
    s.expect_char(')');
    if (atom.args.size() == 1) {
        atom.kind = AtomKind::Class;
    } else if (std::holds_alternative<Literal>(atom.args[1])) {
        atom.kind = AtomKind::DataProp;
    } else {
        atom.kind = AtomKind::ObjProp;
    }
    return atom;
}

// Parses "A(..) & B(..) & ..."; a clause line ending in '&' continues on the
// following line.
std::vector<Atom> parse_atom_list(const std::vector<detail::Line>& lines, std::size_t& index,
                                  detail::LineScanner& s, const std::string& filename) {
    std::vector<Atom> atoms;
    detail::LineScanner* cur = &s;
    std::vector<detail::LineScanner> extra; // keeps continuation scanners alive
    extra.reserve(lines.size());
    for (;;) {
        atoms.push_back(parse_atom(*cur));
        if (!cur->try_eat('&')) {
            cur->expect_end();
            break;
        }
        if (cur->at_end()) {
            if (index + 1 >= lines.size())
                cur->fail("clause continues past end of file", {"atom"});
            ++index;
            extra.emplace_back(lines[index], filename);
            cur = &extra.back();
        }
    }
    return atoms;
}

void check_variable_safety(const Rule& rule, const std::string& filename, int line) {
    std::set<std::string> body_vars;
    for (const auto& atom : rule.body)
        for (const auto& term : atom.args)
            if (const Variable* v = std::get_if<Variable>(&term)) body_vars.insert(v->name);
    for (const auto& atom : rule.head)
        for (const auto& term : atom.args)
            if (const Variable* v = std::get_if<Variable>(&term))
                if (!body_vars.count(v->name))
                    throw UnsafeVariableError(filename, line, rule.id, v->name);
}

} // namespace

RuleCatalog parse_rules(std::string_view text, const std::string& filename) {
    RuleCatalog catalog;
    const auto lines = detail::logical_lines(text);

    std::size_t i = 0;
    while (i < lines.size()) {
        detail::LineScanner header(lines[i], filename);
        if (!header.try_eat_keyword("rule"))
            header.fail("expected start of a rule block", {"rule"});
        Rule rule;
        int rule_line = lines[i].number;
        rule.id = header.expect_identifier("rule id");
        rule.gloss = header.expect_string("gloss");
        header.expect_end();
        ++i;

        bool saw_when = false;
        bool saw_then = false;
        while (i < lines.size()) {
            detail::LineScanner s(lines[i], filename);
            if (s.try_eat_keyword("rule")) break;
            if (s.try_eat_keyword("source")) {
                SourceLink link;
                link.doc = s.expect_identifier("document id");
                link.locator = s.expect_string("locator");
                link.quote = s.expect_string("quote");
                s.expect_end();
                rule.source_links.push_back(std::move(link));
            } else if (s.try_eat_keyword("assumption")) {
                rule.assumption_links.push_back(s.expect_identifier("assumption id"));
                s.expect_end();
            } else if (s.try_eat_keyword("when")) {
                if (saw_when) s.fail("duplicate when clause", {});
                rule.body = parse_atom_list(lines, i, s, filename);
                saw_when = true;
            } else if (s.try_eat_keyword("then")) {
                if (!saw_when) s.fail("then clause without preceding when", {"when"});
                if (saw_then) s.fail("duplicate then clause", {});
                rule.head = parse_atom_list(lines, i, s, filename);
                saw_then = true;
            } else {
                s.fail("unknown statement in rule block",
                       {"rule", "source", "assumption", "when", "then"});
            }
            ++i;
        }
        if (saw_when && !saw_then)
            throw ParseError(filename, rule_line, 1, "rule " + rule.id + " has when but no then",
                             {"then"});
        check_variable_safety(rule, filename, rule_line);
        catalog.rules.push_back(std::move(rule));
    }
    return catalog;
}

RuleCatalog load_rules_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open rule file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rules(buf.str(), path.filename().string());
}

std::string print_rules(const RuleCatalog& catalog) {
    std::ostringstream os;
    bool first = true;
    for (const auto& rule : catalog.rules) {
        if (!first) os << "\n";
        first = false;
        os << "rule " << rule.id << " " << detail::escape_quoted(rule.gloss) << "\n";
        for (const auto& link : rule.source_links)
            os << "source " << link.doc << " " << detail::escape_quoted(link.locator) << " "
               << detail::escape_quoted(link.quote) << "\n";
        for (const auto& id : rule.assumption_links) os << "assumption " << id << "\n";
        auto emit_clause = [&os](const char* kw, const std::vector<Atom>& atoms) {
            if (atoms.empty()) return;
            os << kw << " ";
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (i) os << " & ";
                os << atoms[i].to_string();
            }
            os << "\n";
        };
        emit_clause("when", rule.body);
        emit_clause("then", rule.head);
    }
    return os.str();
}

std::string ValidationIssue::to_string() const {
    if (kind == Kind::UnknownConcept)
        return "rule " + rule_id + ": unknown concept '" + symbol + "'";
    return "rule " + rule_id + ": kind mismatch: " + detail;
}

namespace {

// Term sorts inferred from atom positions; literal sorts carry the kind.
struct TermSort {
    bool is_literal{false};
    LiteralKind literal_kind{LiteralKind::Bool};
};

void validate_atom(const Ontology& ontology, const Rule& rule, const Atom& atom, bool in_head,
                   std::map<std::string, TermSort>& var_sorts,
                   std::vector<ValidationIssue>& issues) {
    auto add_unknown = [&](const std::string& symbol) {
        issues.push_back({ValidationIssue::Kind::UnknownConcept, rule.id, symbol, ""});
    };
    auto add_mismatch = [&](const std::string& detail) {
        issues.push_back({ValidationIssue::Kind::KindMismatch, rule.id, atom.predicate, detail});
    };
    auto require_individual_sort = [&](const Term& term, const std::string& position) {
        if (std::holds_alternative<Literal>(term)) {
            add_mismatch("literal " + format_term(term) + " in individual position (" + position +
                         " of " + atom.to_string() + ")");
            return;
        }
        if (const Variable* v = std::get_if<Variable>(&term)) {
            auto [it, inserted] = var_sorts.emplace(v->name, TermSort{false, LiteralKind::Bool});
            if (!inserted && it->second.is_literal)
                add_mismatch("variable " + v->name + " used both for individuals and literals");
        }
    };

    const ClassDecl* cls = ontology.find_class(atom.predicate);
    const ObjPropDecl* obj = ontology.find_obj_prop(atom.predicate);
    const DataPropDecl* data = ontology.find_data_prop(atom.predicate);

    if (atom.args.size() == 1) {
        if (!cls) {
            if (obj || data)
                add_mismatch(atom.predicate + " is a property but used as a class atom");
            else
                add_unknown(atom.predicate);
            return;
        }
        require_individual_sort(atom.args[0], "argument 1");
        return;
    }

    if (cls && !obj && !data) {
        add_mismatch(atom.predicate + " is a class but used as a binary atom");
        return;
    }
    if (!obj && !data) {
        add_unknown(atom.predicate);
        return;
    }

    require_individual_sort(atom.args[0], "argument 1");
    const Term& value = atom.args[1];
    if (obj) {
        require_individual_sort(value, "argument 2");
        return;
    }

    // Data property: second argument is a literal of the declared kind or a
    // literal-sorted variable. Heads must not invent values, so a head
    // variable there must already carry a literal sort from the body.
    if (const Literal* lit = std::get_if<Literal>(&value)) {
        if (kind_of(*lit) != data->range)
            add_mismatch(atom.to_string() + " has a " + literal_kind_name(kind_of(*lit)) +
                         " value; range of " + atom.predicate + " is " +
                         literal_kind_name(data->range));
        return;
    }
    if (std::holds_alternative<Individual>(value)) {
        add_mismatch("individual " + format_term(value) + " in value position of " +
                     atom.to_string());
        return;
    }
    const Variable& v = std::get<Variable>(value);
    auto it = var_sorts.find(v.name);
    if (it != var_sorts.end()) {
        if (!it->second.is_literal)
            add_mismatch("variable " + v.name + " used both for individuals and literals");
        else if (it->second.literal_kind != data->range)
            add_mismatch("variable " + v.name + " carries " +
                         literal_kind_name(it->second.literal_kind) + " values; range of " +
                         atom.predicate + " is " + literal_kind_name(data->range));
    } else if (in_head) {
        add_mismatch("head value variable " + v.name + " is not bound to a literal in the body");
    } else {
        var_sorts.emplace(v.name, TermSort{true, data->range});
    }
}

} // namespace

std::vector<ValidationIssue> validate_against_ontology(const RuleCatalog& catalog,
                                                       const Ontology& ontology) {
    std::vector<ValidationIssue> issues;
    for (const auto& rule : catalog.rules) {
        std::map<std::string, TermSort> var_sorts;
        for (const auto& atom : rule.body)
            validate_atom(ontology, rule, atom, false, var_sorts, issues);
        for (const auto& atom : rule.head)
            validate_atom(ontology, rule, atom, true, var_sorts, issues);
    }
    return issues;
}

std::string LintFinding::to_string() const {
    switch (kind) {
    case Kind::DuplicateId: return "duplicate rule id " + subject;
    case Kind::RedundantRule: return "rules " + subject + " share body and head: " + detail;
    case Kind::DeadVocabulary: return "dead vocabulary: " + detail;
    case Kind::MissingProvenance: return "rule " + subject + " has no source link";
    }
    return "";
}

std::vector<LintFinding> lint_catalog(const RuleCatalog& catalog, const Ontology& ontology,
                                      std::span<const Scene> scenes) {
    std::vector<LintFinding> findings;

    std::set<std::string> seen_ids;
    for (const auto& rule : catalog.rules)
        if (!seen_ids.insert(rule.id).second)
            findings.push_back({LintFinding::Kind::DuplicateId, false, rule.id, ""});

    for (std::size_t i = 0; i < catalog.rules.size(); ++i)
        for (std::size_t j = i + 1; j < catalog.rules.size(); ++j) {
            const Rule& a = catalog.rules[i];
            const Rule& b = catalog.rules[j];
            if (a.formalized() && a.body == b.body && a.head == b.head)
                findings.push_back({LintFinding::Kind::RedundantRule, false, a.id + "/" + b.id,
                                    a.id + " and " + b.id});
        }

    for (const auto& rule : catalog.rules)
        if (rule.source_links.empty())
            findings.push_back({LintFinding::Kind::MissingProvenance, false, rule.id, ""});

    // Dead vocabulary: a symbol is used if a rule atom or a scene mentions
    // it, if it is an ancestor of a used class, or the domain/range of a
    // used property.
    std::set<std::string> used;
    for (const auto& rule : catalog.rules)
        for (const auto* atoms : {&rule.body, &rule.head})
            for (const auto& atom : *atoms) used.insert(atom.predicate);
    for (const auto& scene : scenes) {
        for (const auto& [name, cls] : scene.individuals) used.insert(cls);
        for (const auto& fact : scene.facts) used.insert(fact.predicate);
    }
    TaxonomyClosure tax = taxonomy_closure(ontology);
    std::set<std::string> reachable = used;
    for (const auto& symbol : used) {
        if (auto it = tax.find(symbol); it != tax.end())
            reachable.insert(it->second.begin(), it->second.end());
        if (const ObjPropDecl* p = ontology.find_obj_prop(symbol)) {
            if (p->domain) reachable.insert(*p->domain);
            if (p->range) reachable.insert(*p->range);
        }
        if (const DataPropDecl* p = ontology.find_data_prop(symbol))
            if (p->domain) reachable.insert(*p->domain);
    }
    // Domain/range classes pull in their own ancestors.
    for (const auto& symbol : std::set<std::string>(reachable))
        if (auto it = tax.find(symbol); it != tax.end())
            reachable.insert(it->second.begin(), it->second.end());

    for (const auto& decl : ontology.classes())
        if (!reachable.count(decl.name))
            findings.push_back({LintFinding::Kind::DeadVocabulary, true, decl.name,
                                "class '" + decl.name + "' used by no rule and no scene"});
    for (const auto& decl : ontology.obj_props())
        if (!reachable.count(decl.name))
            findings.push_back({LintFinding::Kind::DeadVocabulary, true, decl.name,
                                "property '" + decl.name + "' used by no rule and no scene"});
    for (const auto& decl : ontology.data_props())
        if (!reachable.count(decl.name))
            findings.push_back({LintFinding::Kind::DeadVocabulary, true, decl.name,
                                "property '" + decl.name + "' used by no rule and no scene"});

    return findings;
}

} // namespace nba
