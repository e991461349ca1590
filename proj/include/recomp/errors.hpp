#ifndef RECOMP_ERRORS_HPP
#define RECOMP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace recomp {

using BigInt = boost::multiprecision::cpp_int;

/// Raised when a decompression would exceed the caller's budget.
/// Carries the exact length that would have been produced.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(BigInt required_length)
        : std::runtime_error("decompression budget exceeded, full length is " +
                             required_length.str()),
          required(std::move(required_length)) {}

    BigInt required;
};

/// An operation was invoked outside its contract (e.g. pair compression on a
/// crossing pair, block compression on an outer letter).
class PreconditionError : public std::logic_error {
public:
    explicit PreconditionError(const std::string& what)
        : std::logic_error(what) {}
};

/// Input text could not be parsed. Position is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

/// Raw input rejected during normalization (cycles, missing productions,
/// markers used by the caller, power labels outside a relaxed automaton).
class MalformedInputError : public std::runtime_error {
public:
    explicit MalformedInputError(const std::string& what)
        : std::runtime_error(what) {}
};

/// The main loop exceeded its iteration ceiling. The shrink argument bounds
/// the iteration count, so hitting the ceiling signals a bug, not bad input.
class IterationLimitError : public std::runtime_error {
public:
    explicit IterationLimitError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace recomp

#endif  // RECOMP_ERRORS_HPP
