#pragma once

#include "nba/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nba::detail {

// One logical input line with its 1-based position in the file.
struct Line {
    std::string text;
    int number{0};
};

// Splits into lines, drops '#' comments (quote-aware) and blank lines.
std::vector<Line> logical_lines(std::string_view text);

// Character-level scanner over one line. All expect_* helpers throw
// ParseError carrying file/line/column and the expected-token set.
class LineScanner {
public:
    LineScanner(const Line& line, std::string file);

    void skip_ws();
    bool at_end();

    char peek();
    bool try_eat(char c);
    void expect_char(char c);

    bool try_eat_keyword(std::string_view word);
    void expect_keyword(std::string_view word);

    // [A-Za-z_][A-Za-z0-9_-]*
    bool looks_at_identifier();
    std::string expect_identifier(const std::string& what = "identifier");

    // ?[A-Za-z][A-Za-z0-9_]*
    bool looks_at_variable();
    std::string expect_variable();

    bool looks_at_string();
    std::string expect_string(const std::string& what = "quoted string");

    bool looks_at_int();
    std::int64_t expect_int();

    void expect_end();

    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {});

    int line_number() const { return line_; }
    int column() const { return static_cast<int>(pos_) + 1; }
    const std::string& file() const { return file_; }

private:
    std::string text_;
    std::string file_;
    int line_;
    std::size_t pos_{0};
};

std::string escape_quoted(const std::string& s);

bool is_identifier(std::string_view s);

} // namespace nba::detail
