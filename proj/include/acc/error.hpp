#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed program, formula, certificate or update text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(format(what, line, column)), detail_(what), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    // The message without its position prefix.
    const std::string& detail() const { return detail_; }

private:
    static std::string format(const std::string& what, std::size_t line,
                              std::size_t column) {
        return "line " + std::to_string(line) + ", column " +
               std::to_string(column) + ": " + what;
    }

    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

// Operands of a domain operation live over incompatible variable scopes.
class ScopeError : public Error {
public:
    using Error::Error;
};

// Explicit model sets are exponential in scope size; refuse beyond the cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

// A deletion in an update matches no rule of the program.
class PatchConflict : public Error {
public:
    using Error::Error;
};

// Persisted state files are missing, unreadable or mutually inconsistent.
class CorruptState : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace acc
