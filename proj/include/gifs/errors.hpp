#pragma once

#include <stdexcept>
#include <string>

namespace gifs {

// Root of the library's error hierarchy. Every failure the library can signal
// derives from this, so callers may catch gifs::Error to handle anything.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A map/system/point was given with inconsistent dimensions, orders, or axes.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// The certified Lipschitz bound of some map is >= 1, so the system is not a
// contraction and has no guaranteed attractor.
class ContractionViolation : public Error {
public:
    ContractionViolation(std::string msg, double bound)
        : Error(std::move(msg)), bound(bound) {}
    double bound;
};

// Interval certification found a map whose image can leave the cube [0,D]^M.
class RangeViolation : public Error {
public:
    using Error::Error;
};

// An operation that requires nonempty point sets received an empty one.
class EmptyInput : public Error {
public:
    using Error::Error;
};

// The combinatorial guard: evaluating a step would exceed the configured
// budget of map evaluations.
class TupleBudgetExceeded : public Error {
public:
    TupleBudgetExceeded(std::string msg, long long required, long long budget)
        : Error(std::move(msg)), required(required), budget(budget) {}
    long long required;
    long long budget;
};

// A measured per-step gap exceeded its theoretical bound by more than the
// allowed slack. This indicates an implementation bug, never bad input data.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

// The requested target accuracy is too coarse for an optimal plan (it must be
// strictly below the cube diameter D*sqrt(M)).
class EpsilonTooLarge : public Error {
public:
    using Error::Error;
};

// A cost model was asked for an order p it does not cover.
class UnsupportedOrder : public Error {
public:
    using Error::Error;
};

// builtin() was asked for a name that is not registered.
class UnknownExample : public Error {
public:
    using Error::Error;
};

// Malformed system-definition text. Carries a 1-based source position and a
// description of what the parser expected there.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, std::string expected)
        : Error("syntax error at " + std::to_string(line) + ":" +
                std::to_string(col) + ": expected " + expected),
          line(line), col(col), expected(std::move(expected)) {}
    int line;
    int col;
    std::string expected;
};

// Well-formed text that fails certification (contraction, range, dimensions)
// when the parsed document is built into a system.
class SemanticError : public Error {
public:
    using Error::Error;
};

// A file could not be read or written; the message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gifs
