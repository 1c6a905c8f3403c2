#include "nba/errors.hpp"

#include <sstream>

namespace nba {

std::string ParseError::render(const std::string& file, int line, int column,
                               const std::string& message,
                               const std::vector<std::string>& expected) {
    std::ostringstream os;
    os << file << ":" << line << ":" << column << ": " << message;
    if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) os << ", ";
            os << expected[i];
        }
        os << ")";
    }
    return os.str();
}

ParseError::ParseError(std::string file, int line, int column, const std::string& message,
                       std::vector<std::string> expected)
    : Error(render(file, line, column, message, expected)),
      file_(std::move(file)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

UnsafeVariableError::UnsafeVariableError(std::string file, int line, std::string rule_id,
                                         std::string variable)
    : ParseError(std::move(file), line, 1,
                 "unsafe variable " + variable + " in head of rule " + rule_id +
                     " (does not occur in body)"),
      rule_id_(std::move(rule_id)),
      variable_(std::move(variable)) {}

CycleError::CycleError(std::vector<std::string> cycle)
    : Error([&] {
          std::string msg = "subclass cycle detected:";
          for (const auto& c : cycle) msg += " " + c;
          return msg;
      }()),
      cycle_(std::move(cycle)) {}

UnknownSymbolError::UnknownSymbolError(std::string symbol, const std::string& context)
    : Error("unknown symbol '" + symbol + "' (" + context + ")"), symbol_(std::move(symbol)) {}

UnknownFactError::UnknownFactError(const std::string& fact_text)
    : Error("fact not present in fact base: " + fact_text) {}

DanglingReferenceError::DanglingReferenceError(std::string from, std::string to)
    : Error("dangling reference: " + from + " -> " + to),
      from_(std::move(from)),
      to_(std::move(to)) {}

DuplicateScenarioError::DuplicateScenarioError(std::string scenario_id)
    : Error("duplicate scenario id: " + scenario_id), id_(std::move(scenario_id)) {}

} // namespace nba
