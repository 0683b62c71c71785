#pragma once

#include <stdexcept>
#include <string>

namespace loopfact {

// Input outside the mathematical domain of an operation (point off the
// circle, non-unitary symbol, non-reduced word, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncated computation could not reach the requested tolerance.  Carries
// the bound that was actually achieved.
struct TruncationError : std::runtime_error {
    double achieved_bound;
    TruncationError(const std::string& msg, double bound)
        : std::runtime_error(msg + " (achieved bound " + std::to_string(bound) + ")"),
          achieved_bound(bound) {}
};

// Loop outside the big cell / factorization degenerate.
struct DegenerateLoopError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integral fails its finiteness condition; `failing_index` is the first
// level at which the condition breaks (1-based).
struct DivergentIntegralError : std::runtime_error {
    int failing_index;
    DivergentIntegralError(const std::string& msg, int j)
        : std::runtime_error(msg), failing_index(j) {}
};

// Section doubling (or series extension) failed to settle.
struct ConvergenceError : std::runtime_error {
    double last_value, previous_value;
    ConvergenceError(const std::string& msg, double prev, double last)
        : std::runtime_error(msg), last_value(last), previous_value(prev) {}
};

// Malformed input document.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace loopfact
