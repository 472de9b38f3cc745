// SPDX-License-Identifier: MIT
#pragma once

#include <string>

#include "qsynth/circuit.hpp"

namespace qsynth {

/// How a triply-controlled X reaches the output text: as the `c3x` gate from
/// the standard include, or as three Toffolis through a dedicated zeroed
/// helper qubit (`qreg c3x_anc[1]`, appended after the circuit's registers).
enum class CccxMode {
    NativeC3x,
    DecomposeCcx,
};

struct EmitOptions {
    CccxMode cccx = CccxMode::NativeC3x;
    /// Emit annotations as `// block: ...` comment lines.
    bool include_comments = false;
};

/// Renders the circuit as OPENQASM 2.0. Deterministic: equal circuits and
/// options produce byte-identical text. Requires resolved pool usage.
std::string emit(const Circuit& circuit, const EmitOptions& options = {});

/// Parses OPENQASM 2.0 text produced by emit (plus whitespace and comment
/// variations) back into a circuit. Rejects anything outside the emitted
/// dialect with a parse error carrying 1-based line and column.
Circuit parse(const std::string& text);

} // namespace qsynth
