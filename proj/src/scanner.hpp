#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "cocert/errors.hpp"

namespace cocert::detail {

inline bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '*';
}

// Character cursor with line/column tracking, shared by the text parsers.
class Scanner {
public:
    explicit Scanner(std::string_view text, std::size_t line = 0, std::size_t col_offset = 0,
                     bool comments = true)
        : text_(text), line_(line), col_offset_(col_offset), comments_(comments) {}

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#' && comments_) {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    // Raw character at offset from the cursor, without skipping whitespace.
    char raw(std::size_t off = 0) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept(std::string_view s) {
        skip_ws();
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'" + found());
    }

    void expect(std::string_view s) {
        if (!accept(s)) fail("expected '" + std::string(s) + "'" + found());
    }

    bool peek_ident() {
        skip_ws();
        return pos_ < text_.size() && is_ident_char(text_[pos_]);
    }

    std::string ident(const char* what = "identifier") {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what + found());
        return std::string(text_.substr(start, pos_ - start));
    }

    // Number literal: optional sign, digits, optional '/digits' or '.digits'.
    std::string number() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' || text_[pos_] == '.'))
            ++pos_;
        if (start == pos_) fail("expected number" + found());
        return std::string(text_.substr(start, pos_ - start));
    }

    std::size_t pos() const { return pos_; }
    void set_pos(std::size_t p) { pos_ = p; }
    std::string_view rest() const { return text_.substr(pos_); }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
        throw ParseError(msg, line_, col_offset_ + p + 1);
    }

    std::string found() {
        skip_ws();
        if (pos_ >= text_.size()) return ", found end of input";
        return std::string(", found '") + text_[pos_] + "'";
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col_offset_;
    bool comments_;
};

}  // namespace cocert::detail
