#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdpkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree (vector lengths, matrix shapes, non power-of-two lengths).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A brute-force guard was exceeded; the computation was refused, not attempted.
class FeasibilityError : public Error {
public:
    using Error::Error;
};

/// Bad parameters, e.g. a point count that is not an even power of two.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A generator assignment does not extend to a homomorphism into Aut(N).
class HomomorphismError : public Error {
public:
    using Error::Error;
};

/// A subset whose quotient counts are not constant over the non-identity elements.
class NotADifferenceSetError : public Error {
public:
    NotADifferenceSetError(const std::string& what, std::uint32_t first_element, std::size_t first_count,
                           std::uint32_t second_element, std::size_t second_count)
        : Error(what),
          first_element_(first_element),
          first_count_(first_count),
          second_element_(second_element),
          second_count_(second_count) {}

    std::uint32_t first_element() const { return first_element_; }
    std::size_t first_count() const { return first_count_; }
    std::uint32_t second_element() const { return second_element_; }
    std::size_t second_count() const { return second_count_; }

private:
    std::uint32_t first_element_;
    std::size_t first_count_;
    std::uint32_t second_element_;
    std::size_t second_count_;
};

/// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) return msg;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
    }

    std::size_t line_;
    std::size_t column_;
};

/// An element word refers to a generator the group does not have.
class UnknownGeneratorError : public ParseError {
public:
    UnknownGeneratorError(const std::string& symbol, std::size_t line, std::size_t column)
        : ParseError("unknown generator '" + symbol + "'", line, column), symbol_(symbol) {}

    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

/// A built-in catalog entry failed its load-time re-verification.
class CatalogCorruptionError : public Error {
public:
    using Error::Error;
};

/// A mathematical guarantee was violated at runtime. Always a bug.
class InternalFault : public Error {
public:
    using Error::Error;
};

}  // namespace sdpkit
