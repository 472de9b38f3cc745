// SPDX-License-Identifier: MIT
#include "qsynth/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qsynth {

std::size_t iteration_count(std::uint64_t space_size, std::uint64_t num_solutions) {
    if (num_solutions < 1) {
        throw Error(ErrorCode::Range, "iteration_count: num_solutions must be at least 1");
    }
    if (num_solutions > space_size) {
        throw Error(ErrorCode::Range, "iteration_count: num_solutions exceeds the search space");
    }
    const long double ratio = static_cast<long double>(space_size) /
                              static_cast<long double>(num_solutions);
    const long double rounds = std::numbers::pi_v<long double> / 4.0L * std::sqrt(ratio);
    return static_cast<std::size_t>(std::floor(rounds));
}

BlockFragment build_oracle(Circuit& circuit, const OracleSpec& oracle, AncillaPool& pool) {
    if (oracle.phase_qubits.empty()) {
        throw Error(ErrorCode::Range, "build_oracle: at least one phase qubit is required");
    }
    BlockFragment out;
    out.label = "oracle";
    auto splice = [&out](const BlockFragment& part) {
        out.gates.insert(out.gates.end(), part.gates.begin(), part.gates.end());
        out.ancilla_used = std::max(out.ancilla_used, part.ancilla_used);
    };
    splice(oracle.compute);
    if (oracle.phase_qubits.size() == 1) {
        out.gates.push_back(Gate::z(oracle.phase_qubits.front()));
    } else {
        const std::span<const QubitRef> phase(oracle.phase_qubits);
        splice(multi_control_z(circuit, phase.first(phase.size() - 1), phase.back(), pool));
    }
    splice(reversed(oracle.compute));

    for (const Gate& gate : out.gates) {
        for (QubitRef ref : gate.qubits()) {
            out.touched.push_back(ref);
        }
    }
    std::sort(out.touched.begin(), out.touched.end());
    out.touched.erase(std::unique(out.touched.begin(), out.touched.end()), out.touched.end());
    return out;
}

BlockFragment diffusion(Circuit& circuit, std::span<const QubitRef> qubits, AncillaPool& pool) {
    if (qubits.empty()) {
        throw Error(ErrorCode::InvalidWidth, "diffusion: no qubits given");
    }
    BlockFragment out;
    out.label = "diffusion(n=" + std::to_string(qubits.size()) + ")";
    for (QubitRef q : qubits) {
        out.gates.push_back(Gate::h(q));
    }
    for (QubitRef q : qubits) {
        out.gates.push_back(Gate::x(q));
    }
    BlockFragment mcz =
        multi_control_z(circuit, qubits.first(qubits.size() - 1), qubits.back(), pool);
    out.gates.insert(out.gates.end(), mcz.gates.begin(), mcz.gates.end());
    out.ancilla_used = mcz.ancilla_used;
    for (QubitRef q : qubits) {
        out.gates.push_back(Gate::x(q));
    }
    for (QubitRef q : qubits) {
        out.gates.push_back(Gate::h(q));
    }
    out.touched.assign(qubits.begin(), qubits.end());
    for (QubitRef ref : mcz.touched) {
        out.touched.push_back(ref);
    }
    std::sort(out.touched.begin(), out.touched.end());
    out.touched.erase(std::unique(out.touched.begin(), out.touched.end()), out.touched.end());
    return out;
}

BlockFragment diffusion(Circuit& circuit, RegisterHandle reg, AncillaPool& pool) {
    const std::vector<QubitRef> qubits = reg.qubits();
    return diffusion(circuit, qubits, pool);
}

void grover_search(Circuit& circuit, std::span<const RegisterHandle> search_registers,
                   const OracleSpec& oracle, std::size_t iterations) {
    std::vector<QubitRef> search;
    for (RegisterHandle reg : search_registers) {
        for (QubitRef q : reg.qubits()) {
            search.push_back(q);
        }
    }
    if (search.empty()) {
        throw Error(ErrorCode::InvalidWidth, "grover_search: empty search space");
    }
    circuit.annotate("uniform_superposition");
    for (QubitRef q : search) {
        circuit.append(Gate::h(q));
    }
    const BlockFragment oracle_fragment = build_oracle(circuit, oracle, circuit.pool());
    const BlockFragment diffusion_fragment = diffusion(circuit, search, circuit.pool());
    for (std::size_t round = 0; round < iterations; ++round) {
        oracle_fragment.append_to(circuit);
        diffusion_fragment.append_to(circuit);
    }
    circuit.set_measured(std::vector<RegisterHandle>(search_registers.begin(),
                                                     search_registers.end()));
}

} // namespace qsynth
