#pragma once

#include <stdexcept>
#include <string>

namespace pdim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

/// Operands live in different fields (prime or variable count differ).
class FieldMismatch : public Error {
public:
    using Error::Error;
};

class DependentGenerators : public Error {
public:
    using Error::Error;
};

class HypothesisFailed : public Error {
public:
    using Error::Error;
};

class ZeroEntry : public Error {
public:
    ZeroEntry() : Error("symbol entry is zero") {}
};

class NonUnit : public Error {
public:
    using Error::Error;
};

class LevelOutOfRange : public Error {
public:
    using Error::Error;
};

class NotInLevel : public Error {
public:
    using Error::Error;
};

class NotInBr1 : public Error {
public:
    using Error::Error;
};

/// The level-0 rewriting could not turn a vanishing k2 part into
/// explicit higher-level symbols.
class UnresolvedRelation : public Error {
public:
    using Error::Error;
};

class UnsupportedPrime : public Error {
public:
    using Error::Error;
};

class BadSpecialization : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace pdim
