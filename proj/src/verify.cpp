// SPDX-License-Identifier: MIT
#include "qsynth/verify.hpp"

#include "qsynth/blocks.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/sim.hpp"

namespace qsynth {

namespace {

constexpr std::size_t kMaxNotes = 8;

void record(SuiteResult& result, const std::string& note) {
    ++result.failures;
    if (result.notes.size() < kMaxNotes) {
        result.notes.push_back(note);
    }
}

bool ancillas_clean(const Circuit& circuit, const BasisState& state) {
    const auto anc = circuit.ancilla_register();
    if (!anc.has_value()) {
        return true;
    }
    return state.read_register(circuit, circuit.handle(*anc)) == 0;
}

} // namespace

SuiteResult verify_adder(std::uint32_t min_width, std::uint32_t max_width) {
    SuiteResult result;
    result.name = "adder";
    for (std::uint32_t n = min_width; n <= max_width; ++n) {
        Circuit circuit;
        const RegisterHandle a = circuit.add_register("a", n);
        const RegisterHandle b = circuit.add_register("b", n);
        adder(circuit, a, b).append_to(circuit);
        circuit.plot_ancilla();
        const std::uint64_t limit = 1ull << n;
        for (std::uint64_t av = 0; av < limit; ++av) {
            for (std::uint64_t bv = 0; bv < limit; ++bv) {
                BasisState state(circuit.total_qubits());
                state.set_register(circuit, a, av);
                state.set_register(circuit, b, bv);
                apply_basis(circuit, state);
                ++result.cases;
                const std::uint64_t expect = (av + bv) & (limit - 1);
                if (state.read_register(circuit, a) != av ||
                    state.read_register(circuit, b) != expect) {
                    record(result, "adder n=" + std::to_string(n) + " a=" + std::to_string(av) +
                                       " b=" + std::to_string(bv) + ": got a=" +
                                       std::to_string(state.read_register(circuit, a)) + " b=" +
                                       std::to_string(state.read_register(circuit, b)) +
                                       ", expected a unchanged and b=" + std::to_string(expect));
                }
            }
        }
    }
    return result;
}

SuiteResult verify_multiplier(std::uint32_t max_width) {
    SuiteResult result;
    result.name = "multiplier";
    for (std::uint32_t n1 = 1; n1 <= max_width; ++n1) {
        for (std::uint32_t n2 = 1; n2 <= max_width; ++n2) {
            Circuit circuit;
            const RegisterHandle a = circuit.add_register("a", n1);
            const RegisterHandle b = circuit.add_register("b", n2);
            const RegisterHandle r = circuit.add_register("r", n1 + n2);
            multiplier_asymmetric(circuit, a, b, r, circuit.pool()).append_to(circuit);
            circuit.plot_ancilla();
            for (std::uint64_t av = 0; av < (1ull << n1); ++av) {
                for (std::uint64_t bv = 0; bv < (1ull << n2); ++bv) {
                    BasisState state(circuit.total_qubits());
                    state.set_register(circuit, a, av);
                    state.set_register(circuit, b, bv);
                    apply_basis(circuit, state);
                    ++result.cases;
                    if (state.read_register(circuit, a) != av ||
                        state.read_register(circuit, b) != bv ||
                        state.read_register(circuit, r) != av * bv ||
                        !ancillas_clean(circuit, state)) {
                        record(result, "multiplier n1=" + std::to_string(n1) + " n2=" +
                                           std::to_string(n2) + " a=" + std::to_string(av) +
                                           " b=" + std::to_string(bv) + ": got r=" +
                                           std::to_string(state.read_register(circuit, r)) +
                                           ", expected " + std::to_string(av * bv));
                    }
                }
            }
        }
    }
    return result;
}

SuiteResult verify_comparator(std::uint32_t max_width) {
    SuiteResult result;
    result.name = "comparator";
    for (std::uint32_t n = 1; n <= max_width; ++n) {
        Circuit circuit;
        const RegisterHandle a = circuit.add_register("a", n);
        const RegisterHandle b = circuit.add_register("b", n);
        const RegisterHandle f = circuit.add_register("f", 1, Role::Flag);
        if_equal(circuit, a, b, f[0], circuit.pool()).append_to(circuit);
        circuit.plot_ancilla();
        const std::uint64_t limit = 1ull << n;
        for (std::uint64_t av = 0; av < limit; ++av) {
            for (std::uint64_t bv = 0; bv < limit; ++bv) {
                BasisState state(circuit.total_qubits());
                state.set_register(circuit, a, av);
                state.set_register(circuit, b, bv);
                apply_basis(circuit, state);
                ++result.cases;
                const std::uint64_t expect = av == bv ? 1 : 0;
                if (state.read_register(circuit, a) != av ||
                    state.read_register(circuit, b) != bv ||
                    state.read_register(circuit, f) != expect ||
                    !ancillas_clean(circuit, state)) {
                    record(result, "comparator n=" + std::to_string(n) + " a=" +
                                       std::to_string(av) + " b=" + std::to_string(bv) +
                                       ": got flag=" +
                                       std::to_string(state.read_register(circuit, f)) +
                                       ", expected " + std::to_string(expect));
                }
            }
        }
    }
    return result;
}

SuiteResult verify_mct(std::size_t min_controls, std::size_t max_controls) {
    SuiteResult result;
    result.name = "multi-control fan";
    for (std::size_t k = min_controls; k <= max_controls; ++k) {
        Circuit circuit;
        const RegisterHandle c = circuit.add_register("c", static_cast<std::uint32_t>(k));
        const RegisterHandle t = circuit.add_register("t", 1);
        const std::vector<QubitRef> controls = c.qubits();
        const BlockFragment fragment =
            multi_control_gate_3cx(circuit, controls, t[0], GateKind::X, circuit.pool());
        fragment.append_to(circuit);
        circuit.plot_ancilla();
        const std::uint32_t expect_scratch = multi_control_ancillas(k);
        if (fragment.ancilla_used != expect_scratch ||
            circuit.pool().watermark() != expect_scratch) {
            record(result, "mct k=" + std::to_string(k) + ": scratch count " +
                               std::to_string(fragment.ancilla_used) + " (watermark " +
                               std::to_string(circuit.pool().watermark()) + "), expected " +
                               std::to_string(expect_scratch));
        }
        const std::uint64_t limit = 1ull << k;
        for (std::uint64_t pattern = 0; pattern < limit; ++pattern) {
            BasisState state(circuit.total_qubits());
            state.set_register(circuit, c, pattern);
            apply_basis(circuit, state);
            ++result.cases;
            const std::uint64_t expect = pattern == limit - 1 ? 1 : 0;
            if (state.read_register(circuit, c) != pattern ||
                state.read_register(circuit, t) != expect || !ancillas_clean(circuit, state)) {
                record(result, "mct k=" + std::to_string(k) + " pattern=" +
                                   std::to_string(pattern) + ": got t=" +
                                   std::to_string(state.read_register(circuit, t)) +
                                   ", expected " + std::to_string(expect));
            }
        }
    }
    return result;
}

std::vector<SuiteResult> verify_all() {
    std::vector<SuiteResult> out;
    out.push_back(verify_adder(1, 4));
    out.push_back(verify_multiplier(3));
    out.push_back(verify_comparator(3));
    out.push_back(verify_mct(3, 8));
    return out;
}

} // namespace qsynth
