#include "scan.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace nba::detail {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

} // namespace

std::vector<Line> logical_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string_view raw = (end == std::string_view::npos)
                                   ? text.substr(start)
                                   : text.substr(start, end - start);
        ++number;

        // Strip comment, but not inside a quoted string.
        std::string kept;
        bool in_string = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            char c = raw[i];
            if (in_string) {
                if (c == '\\' && i + 1 < raw.size()) {
                    kept += c;
                    kept += raw[++i];
                    continue;
                }
                if (c == '"') in_string = false;
                kept += c;
            } else {
                if (c == '#') break;
                if (c == '"') in_string = true;
                if (c == '\r') continue;
                kept += c;
            }
        }

        bool blank = kept.find_first_not_of(" \t") == std::string::npos;
        if (!blank) out.push_back(Line{std::move(kept), number});

        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

LineScanner::LineScanner(const Line& line, std::string file)
    : text_(line.text), file_(std::move(file)), line_(line.number) {}

void LineScanner::skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
}

bool LineScanner::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

char LineScanner::peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool LineScanner::try_eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
        ++pos_;
        return true;
    }
    return false;
}

void LineScanner::expect_char(char c) {
    if (!try_eat(c)) fail("unexpected input", {std::string("'") + c + "'"});
}

bool LineScanner::try_eat_keyword(std::string_view word) {
    skip_ws();
    std::size_t end = pos_ + word.size();
    if (end > text_.size()) return false;
    if (text_.compare(pos_, word.size(), word) != 0) return false;
    if (end < text_.size() && ident_char(text_[end])) return false;
    pos_ = end;
    return true;
}

void LineScanner::expect_keyword(std::string_view word) {
    if (!try_eat_keyword(word)) fail("unexpected input", {std::string("'") + std::string(word) + "'"});
}

bool LineScanner::looks_at_identifier() {
    skip_ws();
    return pos_ < text_.size() && ident_start(text_[pos_]);
}

std::string LineScanner::expect_identifier(const std::string& what) {
    if (!looks_at_identifier()) fail("unexpected input", {what});
    std::size_t begin = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(begin, pos_ - begin);
}

bool LineScanner::looks_at_variable() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == '?';
}

std::string LineScanner::expect_variable() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '?')
        fail("unexpected input", {"variable"});
    std::size_t begin = pos_++;
    if (pos_ >= text_.size() || !std::isalpha(static_cast<unsigned char>(text_[pos_])))
        fail("variable name must start with a letter", {"variable"});
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    return text_.substr(begin, pos_ - begin);
}

bool LineScanner::looks_at_string() {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == '"';
}

std::string LineScanner::expect_string(const std::string& what) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("unexpected input", {what});
    ++pos_;
    std::string out;
    while (pos_ < text_.size()) {
        char c = text_[pos_++];
        if (c == '"') return out;
        if (c == '\\' && pos_ < text_.size()) {
            char esc = text_[pos_++];
            if (esc == '"' || esc == '\\') {
                out += esc;
                continue;
            }
            fail("unknown escape sequence", {"\\\"", "\\\\"});
        }
        out += c;
    }
    fail("unterminated string", {"'\"'"});
}

bool LineScanner::looks_at_int() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    return c == '-' && pos_ + 1 < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
}

std::int64_t LineScanner::expect_int() {
    if (!looks_at_int()) fail("unexpected input", {"integer"});
    std::size_t begin = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail("integer out of range", {"integer"});
    return value;
}

void LineScanner::expect_end() {
    if (!at_end()) fail("trailing input", {"end of line"});
}

void LineScanner::fail(const std::string& message, std::vector<std::string> expected) {
    skip_ws();
    throw ParseError(file_, line_, column(), message, std::move(expected));
}

std::string escape_quoted(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s[0])) return false;
    for (char c : s.substr(1))
        if (!ident_char(c)) return false;
    return true;
}

} // namespace nba::detail
