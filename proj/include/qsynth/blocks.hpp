// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsynth/circuit.hpp"

namespace qsynth {

/// A recorded gate sequence plus bookkeeping. Fragments are values: building
/// one never appends to the circuit, so the same fragment can be appended any
/// number of times (each append replays the identical pool slots, which the
/// fragment itself computes and uncomputes).
struct BlockFragment {
    std::string label;
    std::vector<Gate> gates;
    std::vector<QubitRef> touched;   // sorted, unique
    std::uint32_t ancilla_used = 0;  // peak pool growth while building

    /// Appends all gates (and a boundary note when the circuit keeps
    /// annotations) to the circuit.
    void append_to(Circuit& circuit) const;
};

/// Inverse fragment: same gates in reverse order.
BlockFragment reversed(const BlockFragment& fragment);

/// X gates loading a classical constant into a zeroed register.
BlockFragment set_constant(Circuit& circuit, RegisterHandle reg, std::uint64_t value);

/// In-place addition i2 += i1 (mod 2^n) for equal-width registers. i1 is
/// preserved. Uses no ancilla: carries ripple through i1's own bits and are
/// unwound before the block ends.
BlockFragment adder(Circuit& circuit, RegisterHandle i1, RegisterHandle i2);

/// Span form of the adder: dst += src (mod 2^width). Both spans must have the
/// same nonzero width and be disjoint.
BlockFragment adder_spans(Circuit& circuit, std::span<const QubitRef> src,
                          std::span<const QubitRef> dst);

/// dst += src (mod 2^width) with the carry out of the top bit XORed into
/// carry. Same structure as adder_spans plus the two carry taps.
BlockFragment adder_with_carry(Circuit& circuit, std::span<const QubitRef> src,
                               std::span<const QubitRef> dst, QubitRef carry);

/// Long multiplication result += i1 * i2 into a zeroed result register of
/// width exactly width(i1) + width(i2). Rows walk i2 from the least
/// significant bit; each row computes the partial product i1 * i2[k] into
/// width(i1) pool qubits with Toffoli gates, adds it into the result window
/// shifted by k, then replays the Toffoli layer in reverse to clear the pool
/// qubits before the next row.
BlockFragment multiplier_asymmetric(Circuit& circuit, RegisterHandle i1, RegisterHandle i2,
                                    RegisterHandle result, AncillaPool& pool);

/// Flips flag iff i1 == i2 (equal widths). Per-bit XNOR is computed into i2,
/// a multi-controlled X transfers the all-equal condition onto flag, and the
/// XNOR layer is uncomputed, restoring both inputs.
BlockFragment if_equal(Circuit& circuit, RegisterHandle i1, RegisterHandle i2, QubitRef flag,
                       AncillaPool& pool);

/// if_equal for unequal widths: the shorter side is compared as if
/// zero-extended. Surplus bits of the longer side join the condition through
/// plain X (XNOR against a constant 0), so no padding qubits are needed.
BlockFragment if_equal_zero_extended(Circuit& circuit, RegisterHandle i1, RegisterHandle i2,
                                     QubitRef flag, AncillaPool& pool);

/// Exact triple-controlled X on four distinct qubits, no ancilla. Recorded as
/// the primitive CCCX; emission decides whether to expand it.
BlockFragment toffoli_4q(Circuit& circuit, QubitRef c0, QubitRef c1, QubitRef c2, QubitRef target);

/// Multi-controlled X or Z over any number of controls, built from a CCCX
/// chain: the first CCCX folds three controls into a pool qubit, every
/// further CCCX folds the previous pool qubit plus two fresh controls, the
/// final gate drives the target, and the chain is then replayed in reverse.
/// Pool usage is exactly max(0, (k - 2) / 2) for k controls. Z conjugates the
/// final gate's target with Hadamards, which turns the controlled X into a
/// controlled Z exactly.
BlockFragment multi_control_gate_3cx(Circuit& circuit, std::span<const QubitRef> controls,
                                     QubitRef target, GateKind kind, AncillaPool& pool);

/// multi_control_gate_3cx with kind Z: phase -1 exactly on basis states where
/// all controls and the target are 1.
BlockFragment multi_control_z(Circuit& circuit, std::span<const QubitRef> controls, QubitRef target,
                              AncillaPool& pool);

/// Pool qubits consumed by a k-control chain.
std::uint32_t multi_control_ancillas(std::size_t k);

} // namespace qsynth
