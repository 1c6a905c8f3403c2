#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace nba {

enum class LiteralKind { Bool, Int, String };

using Literal = std::variant<bool, std::int64_t, std::string>;

LiteralKind kind_of(const Literal& lit);
std::string literal_kind_name(LiteralKind kind);

// true | 42 | "text" (strings quoted and escaped)
std::string format_literal(const Literal& lit);

enum class FactKind { ClassAssertion, ObjectFact, DataFact };

// A ground statement of the fact base: C(i), p(a, b) or p(a, lit).
// `object` holds monostate for class assertions, the second individual
// for object facts, and the literal for data facts.
struct GroundFact {
    FactKind kind{FactKind::ClassAssertion};
    std::string predicate;
    std::string subject;
    std::variant<std::monostate, std::string, Literal> object;

    static GroundFact class_assertion(std::string cls, std::string individual);
    static GroundFact object_fact(std::string predicate, std::string subject, std::string other);
    static GroundFact data_fact(std::string predicate, std::string subject, Literal value);

    const std::string& object_individual() const { return std::get<std::string>(object); }
    const Literal& object_literal() const { return std::get<Literal>(object); }

    std::string to_string() const;

    auto operator<=>(const GroundFact&) const = default;
};

using FactSet = std::set<GroundFact>;

// Parses "pred(arg)" or "pred(arg1, arg2)" where a second argument that is
// true/false, an integer or a quoted string makes the fact a data fact.
// Variables are rejected. Throws ParseError.
GroundFact parse_ground_fact(const std::string& text);

} // namespace nba
