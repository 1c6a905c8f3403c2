#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nba {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lexical/grammatical failure in one of the text formats. Position is
// 1-based; `expected` lists the token classes that would have been legal.
class ParseError : public Error {
public:
    ParseError(std::string file, int line, int column, const std::string& message,
               std::vector<std::string> expected = {});

    const std::string& file() const { return file_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string render(const std::string& file, int line, int column,
                              const std::string& message,
                              const std::vector<std::string>& expected);

    std::string file_;
    int line_;
    int column_;
    std::vector<std::string> expected_;
};

// A head variable that never occurs in the rule body.
class UnsafeVariableError : public ParseError {
public:
    UnsafeVariableError(std::string file, int line, std::string rule_id, std::string variable);

    const std::string& rule_id() const { return rule_id_; }
    const std::string& variable() const { return variable_; }

private:
    std::string rule_id_;
    std::string variable_;
};

class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> cycle);
    const std::vector<std::string>& cycle() const { return cycle_; }

private:
    std::vector<std::string> cycle_;
};

class UnknownSymbolError : public Error {
public:
    UnknownSymbolError(std::string symbol, const std::string& context);
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class UnknownFactError : public Error {
public:
    explicit UnknownFactError(const std::string& fact_text);
};

class DanglingReferenceError : public Error {
public:
    DanglingReferenceError(std::string from, std::string to);
    const std::string& from() const { return from_; }
    const std::string& to() const { return to_; }

private:
    std::string from_;
    std::string to_;
};

class DuplicateScenarioError : public Error {
public:
    explicit DuplicateScenarioError(std::string scenario_id);
    const std::string& scenario_id() const { return id_; }

private:
    std::string id_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace nba
