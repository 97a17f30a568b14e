#pragma once

#include <stdexcept>
#include <string>

namespace aksz {

// A replacement polynomial or derivation entry violates the grading
// contract (ghost / form degree / parity mismatch).
struct GradingError : std::runtime_error {
    explicit GradingError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation would need a jet of order beyond the context truncation.
// Callers recover by rebuilding the context with a larger jet order.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A cohomology block selection is unusable (infinite basis, differential
// not grading-homogeneous, ...).
struct BlockError : std::runtime_error {
    explicit BlockError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation precondition failed (non-nilpotent input, missing structure,
// argument outside the contract).
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Spec-file loading failure. Carries a position inside the offending
// expression string (0-based offset, reported 1-based).
struct SpecError : std::runtime_error {
    enum class Kind { Syntax, UndeclaredSymbol, DuplicateCoordinate, GhostMismatch, Structure };

    SpecError(Kind k, const std::string& msg, int line = 0, int column = 0)
        : std::runtime_error(msg), kind(k), line(line), column(column) {}

    Kind kind;
    int line;
    int column;
};

}  // namespace aksz
