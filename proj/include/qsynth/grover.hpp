// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsynth/blocks.hpp"
#include "qsynth/circuit.hpp"

namespace qsynth {

// Number of amplification rounds for a search space of `space_size` states
// containing `num_solutions` marked ones: floor(pi/4 * sqrt(N/M)).
// Requires 1 <= num_solutions <= space_size.
std::size_t iteration_count(std::uint64_t space_size, std::uint64_t num_solutions);

// A phase oracle described by a reversible predicate. `compute` maps
// |x>|0> to |x>|f(x)>, writing the predicate bits onto `phase_qubits`; the
// oracle flips the phase of states where every phase qubit is 1, then
// uncomputes.
struct OracleSpec {
    BlockFragment compute;
    std::vector<QubitRef> phase_qubits;
};

BlockFragment build_oracle(Circuit& circuit, const OracleSpec& oracle, AncillaPool& pool);

// Inversion about the mean over the given qubits: H X mcz X H, equal to
// 2|s><s| - I up to a global phase.
BlockFragment diffusion(Circuit& circuit, std::span<const QubitRef> qubits, AncillaPool& pool);
BlockFragment diffusion(Circuit& circuit, RegisterHandle reg, AncillaPool& pool);

// Appends a full search: uniform superposition over the search registers,
// then `iterations` rounds of oracle + diffusion, and marks the search
// registers as the measured set.
void grover_search(Circuit& circuit, std::span<const RegisterHandle> search_registers,
                   const OracleSpec& oracle, std::size_t iterations);

} // namespace qsynth
