#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdql {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)) {}
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A symbol or variable that cannot be interpreted in the signature at hand.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// A bounded search or iteration ran out of budget before it could decide.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

/// Quantum negation (or global satisfaction) requested on a sentence whose
/// extension is not finitely representable.
class NotRepresentable : public Error {
public:
    using Error::Error;
};

class InvalidMorphism : public Error {
public:
    using Error::Error;
};

}  // namespace hdql
