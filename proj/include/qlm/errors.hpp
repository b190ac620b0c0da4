#pragma once

#include <stdexcept>
#include <string>

namespace qlm {

// Exit-code mapping used by the CLI: validation 2, truncation 3, invariant 4.

// Malformed or inconsistent user input (bad JSON, non-cycle attaching class,
// degree mismatches, non-cocommutative coalgebra, ...).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation needed data above the configured truncation degree.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed (d^2 != 0 after a construction that should
// guarantee it, basis not spanning, ...). Always a bug or a broken convention.
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qlm
