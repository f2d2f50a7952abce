#ifndef ADA_ERRORS_HPP
#define ADA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ada {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Division by an element that is exactly zero.
struct DivByZero : Error {
    explicit DivByZero(const std::string& msg = "division by zero") : Error(msg) {}
};

// A verdict would depend on terms hidden below the error monomial of a
// truncated series.  Raised instead of guessing.
struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& msg = "verdict lies below the error term")
        : Error(msg) {}
};

// Antiderivative hit a c/x term: the logarithm is not in the field.
struct LogDivergent : Error {
    explicit LogDivergent(const std::string& msg = "antiderivative requires a logarithm")
        : Error(msg) {}
};

// An element is not of the shape lambda + m^dagger + small over this instance.
struct NotLogDerivShape : Error {
    explicit NotLogDerivShape(const std::string& msg = "no monomial with matching logarithmic derivative")
        : Error(msg) {}
};

// Fixed-point solver: the dominance precondition fails / iteration does not contract.
struct DominanceFailure : Error {
    explicit DominanceFailure(const std::string& msg = "dominance precondition fails")
        : Error(msg) {}
};

// Generic precondition violation (zero phi, level mismatch, non-homogeneous input, ...).
struct Precondition : Error {
    explicit Precondition(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    size_t pos;
    ParseError(const std::string& msg, size_t at) : Error(msg + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

} // namespace ada

#endif
