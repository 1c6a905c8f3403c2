#include "nba/fact.hpp"

#include "nba/errors.hpp"
#include "ground_atom.hpp"
#include "scan.hpp"

#include <sstream>

namespace nba {

LiteralKind kind_of(const Literal& lit) {
    switch (lit.index()) {
    case 0: return LiteralKind::Bool;
    case 1: return LiteralKind::Int;
    default: return LiteralKind::String;
    }
}

std::string literal_kind_name(LiteralKind kind) {
    switch (kind) {
    case LiteralKind::Bool: return "bool";
    case LiteralKind::Int: return "int";
    default: return "string";
    }
}

std::string format_literal(const Literal& lit) {
    if (const bool* b = std::get_if<bool>(&lit)) return *b ? "true" : "false";
    if (const std::int64_t* i = std::get_if<std::int64_t>(&lit)) return std::to_string(*i);
    return detail::escape_quoted(std::get<std::string>(lit));
}

GroundFact GroundFact::class_assertion(std::string cls, std::string individual) {
    GroundFact f;
    f.kind = FactKind::ClassAssertion;
    f.predicate = std::move(cls);
    f.subject = std::move(individual);
    return f;
}

GroundFact GroundFact::object_fact(std::string predicate, std::string subject, std::string other) {
    GroundFact f;
    f.kind = FactKind::ObjectFact;
    f.predicate = std::move(predicate);
    f.subject = std::move(subject);
    f.object = std::move(other);
    return f;
}

GroundFact GroundFact::data_fact(std::string predicate, std::string subject, Literal value) {
    GroundFact f;
    f.kind = FactKind::DataFact;
    f.predicate = std::move(predicate);
    f.subject = std::move(subject);
    f.object = std::move(value);
    return f;
}

std::string GroundFact::to_string() const {
    std::ostringstream os;
    os << predicate << "(" << subject;
    if (kind == FactKind::ObjectFact) os << ", " << object_individual();
    if (kind == FactKind::DataFact) os << ", " << format_literal(object_literal());
    os << ")";
    return os.str();
}

namespace detail {

GroundFact scan_ground_fact(LineScanner& s) {
    std::string predicate = s.expect_identifier("predicate");
    s.expect_char('(');

    auto read_arg = [&]() -> std::variant<std::string, Literal> {
        if (s.looks_at_variable())
            s.fail("ground atom may not contain variables", {"individual", "literal"});
        if (s.looks_at_string()) return Literal{s.expect_string()};
        if (s.looks_at_int()) return Literal{s.expect_int()};
        std::string name = s.expect_identifier("individual or literal");
        if (name == "true") return Literal{true};
        if (name == "false") return Literal{false};
        return name;
    };

    auto first = read_arg();
    if (std::holds_alternative<Literal>(first))
        s.fail("first argument must be an individual", {"individual"});
    std::string subject = std::get<std::string>(first);

    if (s.try_eat(')')) return GroundFact::class_assertion(predicate, subject);
    s.expect_char(',');
    auto second = read_arg();
    s.expect_char(')');
    if (std::holds_alternative<Literal>(second))
        return GroundFact::data_fact(predicate, subject, std::get<Literal>(second));
    return GroundFact::object_fact(predicate, subject, std::get<std::string>(second));
}

} // namespace detail

GroundFact parse_ground_fact(const std::string& text) {
    detail::Line line{text, 1};
    detail::LineScanner s(line, "<fact>");
    GroundFact fact = detail::scan_ground_fact(s);
    s.expect_end();
    return fact;
}

} // namespace nba
