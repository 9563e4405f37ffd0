#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cocert {

// Malformed or inconsistent user input (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : InputError(format(what, line, column)), message_(what), line_(line), column_(column) {}
    const std::string& message() const { return message_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return "column " + std::to_string(column) + ": " + what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// Requested operation does not apply to this functor or mode (CLI exit code 4).
class IncompatibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A self-check failed; indicates a bug (CLI exit code 3).
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cocert
