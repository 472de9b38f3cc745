// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsynth {

/// Classifies every failure the library reports. Tests match on the code,
/// messages are for humans.
enum class ErrorCode {
    NameCollision,
    InvalidWidth,
    DanglingReference,
    Overlap,
    WidthMismatch,
    DoubleRelease,
    UnbalancedAncilla,
    Range,
    Capacity,
    NonPermutationGate,
    Finalized,
    Syntax,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Syntax error in program text; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorCode::Syntax,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace qsynth
