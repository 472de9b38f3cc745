// SPDX-License-Identifier: MIT
#include "qsynth/perceptron.hpp"

#include <algorithm>
#include <bit>

#include "qsynth/blocks.hpp"
#include "qsynth/sim.hpp"

namespace qsynth {

namespace {

std::uint32_t bit_length(std::uint64_t value) {
    return static_cast<std::uint32_t>(64 - std::countl_zero(value | 1ull));
}

void check_spec(const PerceptronSpec& spec) {
    if (spec.i1_value < 1 || spec.i2_value < 1) {
        throw Error(ErrorCode::Range, "training spec: input values must be at least 1");
    }
    if (spec.i1_value >= (1ull << 16) || spec.i2_value >= (1ull << 16)) {
        throw Error(ErrorCode::Range, "training spec: input values must fit 16 bits");
    }
    if (spec.weight_bits < 1 || spec.weight_bits > 8) {
        throw Error(ErrorCode::InvalidWidth, "training spec: weight_bits must be in [1, 8]");
    }
    if (spec.ac_bits < 1 || spec.ac_bits > 16) {
        throw Error(ErrorCode::InvalidWidth, "training spec: ac_bits must be in [1, 16]");
    }
    if (spec.ac_bits < 64 && spec.ac_value >= (1ull << spec.ac_bits)) {
        throw Error(ErrorCode::Range, "training spec: ac_value does not fit ac_bits");
    }
}

// Row count of the product scan follows the second operand, scratch usage the
// first; multiplication commutes, so feed the narrower register in first.
BlockFragment mult_narrow_first(Circuit& circuit, RegisterHandle a, RegisterHandle b,
                                RegisterHandle result, AncillaPool& pool) {
    if (b.width < a.width) {
        std::swap(a, b);
    }
    return multiplier_asymmetric(circuit, a, b, result, pool);
}

struct Layout {
    RegisterHandle w1, w2, w3, i1, i2, p1, p2, sum, prod, ac, flag;
};

Layout add_registers(Circuit& circuit, const PerceptronSpec& spec) {
    const std::uint32_t wb = spec.weight_bits;
    const std::uint32_t n1 = bit_length(spec.i1_value);
    const std::uint32_t n2 = bit_length(spec.i2_value);
    const std::uint32_t pmax = std::max(n1, n2) + wb;
    Layout lay;
    lay.w1 = circuit.add_register("w1", wb);
    lay.w2 = circuit.add_register("w2", wb);
    lay.w3 = circuit.add_register("w3", wb);
    lay.i1 = circuit.add_register("i1", n1);
    lay.i2 = circuit.add_register("i2", n2);
    lay.p1 = circuit.add_register("p1", n1 + wb);
    lay.p2 = circuit.add_register("p2", n2 + wb);
    lay.sum = circuit.add_register("sum", pmax + 1);
    lay.prod = circuit.add_register("prod", pmax + 1 + wb);
    lay.ac = circuit.add_register("ac", spec.ac_bits);
    lay.flag = circuit.add_register("flag", 1, Role::Flag);
    return lay;
}

// |w1 w2 w3, rest=0>  ->  |w1 w2 w3, f(w) on flag, work registers dirty>.
// Self-inverse up to the flag write, so the oracle wraps it around a Z.
BlockFragment build_compute(Circuit& circuit, const Layout& lay) {
    AncillaPool& pool = circuit.pool();
    BlockFragment out;
    out.label = "weighted_sum_predicate";
    std::uint32_t held = 0;
    auto splice = [&out, &held](const BlockFragment& part) {
        out.ancilla_used = std::max(out.ancilla_used, held + part.ancilla_used);
        out.gates.insert(out.gates.end(), part.gates.begin(), part.gates.end());
    };

    splice(mult_narrow_first(circuit, lay.i1, lay.w1, lay.p1, pool));
    splice(mult_narrow_first(circuit, lay.i2, lay.w2, lay.p2, pool));

    // sum starts at zero, so a fan of copies transfers p1.
    for (std::uint32_t j = 0; j < lay.p1.width; ++j) {
        out.gates.push_back(Gate::cx(lay.p1[j], lay.sum[j]));
    }

    // Accumulate p2 over the full value range of sum; the top bit takes the
    // carry. Pool zeros pad p2 when the other product is wider.
    const std::uint32_t add_width = lay.sum.width - 1;
    std::vector<QubitRef> src = lay.p2.qubits();
    std::vector<QubitRef> pads = pool.acquire(add_width - lay.p2.width);
    held += static_cast<std::uint32_t>(pads.size());
    src.insert(src.end(), pads.begin(), pads.end());
    std::vector<QubitRef> dst;
    for (std::uint32_t j = 0; j < add_width; ++j) {
        dst.push_back(lay.sum[j]);
    }
    splice(adder_with_carry(circuit, src, dst, lay.sum[add_width]));
    if (!pads.empty()) {
        pool.release(pads);
        held -= static_cast<std::uint32_t>(pads.size());
    }

    splice(mult_narrow_first(circuit, lay.w3, lay.sum, lay.prod, pool));
    splice(if_equal_zero_extended(circuit, lay.prod, lay.ac, lay.flag[0], pool));

    for (const Gate& gate : out.gates) {
        for (QubitRef ref : gate.qubits()) {
            out.touched.push_back(ref);
        }
    }
    std::sort(out.touched.begin(), out.touched.end());
    out.touched.erase(std::unique(out.touched.begin(), out.touched.end()), out.touched.end());
    return out;
}

void load_constants(Circuit& circuit, const Layout& lay, const PerceptronSpec& spec) {
    circuit.annotate("load_constants");
    set_constant(circuit, lay.i1, spec.i1_value).append_to(circuit);
    set_constant(circuit, lay.i2, spec.i2_value).append_to(circuit);
    set_constant(circuit, lay.ac, spec.ac_value).append_to(circuit);
}

std::string value_bits(std::uint64_t value, std::uint32_t width) {
    std::string out(width, '0');
    for (std::uint32_t i = 0; i < width; ++i) {
        if ((value >> i) & 1u) {
            out[width - 1 - i] = '1';
        }
    }
    return out;
}

std::uint64_t bits_value(std::string_view bits) {
    std::uint64_t value = 0;
    for (char c : bits) {
        value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

} // namespace

std::vector<WeightAssignment> enumerate_solutions(const PerceptronSpec& spec) {
    check_spec(spec);
    const std::uint64_t limit = 1ull << spec.weight_bits;
    std::vector<WeightAssignment> out;
    for (std::uint64_t w1 = 0; w1 < limit; ++w1) {
        for (std::uint64_t w2 = 0; w2 < limit; ++w2) {
            for (std::uint64_t w3 = 0; w3 < limit; ++w3) {
                const std::uint64_t lhs = (spec.i1_value * w1 + spec.i2_value * w2) * w3;
                if (lhs == spec.ac_value) {
                    out.push_back({w1, w2, w3});
                }
            }
        }
    }
    return out;
}

TrainingCircuit build_training_circuit(const PerceptronSpec& spec,
                                       std::optional<std::size_t> iterations_override) {
    check_spec(spec);
    TrainingCircuit training;
    training.spec = spec;
    training.num_solutions = enumerate_solutions(spec).size();
    const std::uint64_t space = 1ull << (3 * spec.weight_bits);
    if (iterations_override.has_value()) {
        training.iterations = *iterations_override;
    } else if (training.num_solutions == 0) {
        training.iterations = 0;
    } else {
        training.iterations = iteration_count(space, training.num_solutions);
    }

    {
        Circuit& c = training.circuit;
        const Layout lay = add_registers(c, spec);
        load_constants(c, lay, spec);
        const BlockFragment compute = build_compute(c, lay);
        OracleSpec oracle;
        oracle.compute = compute;
        oracle.phase_qubits = {lay.flag[0]};
        const std::vector<RegisterHandle> search = {lay.w1, lay.w2, lay.w3};
        grover_search(c, search, oracle, training.iterations);
        c.plot_ancilla();
        training.w1 = lay.w1;
        training.w2 = lay.w2;
        training.w3 = lay.w3;
        training.flag = lay.flag;
    }
    {
        Circuit& c = training.oracle_probe;
        const Layout lay = add_registers(c, spec);
        load_constants(c, lay, spec);
        build_compute(c, lay).append_to(c);
        c.set_measured({lay.flag});
        c.plot_ancilla();
    }
    return training;
}

WeightAssignment split_measured(const TrainingCircuit& training, const std::string& bits) {
    const std::uint32_t wb = training.spec.weight_bits;
    if (bits.size() != static_cast<std::size_t>(3 * wb)) {
        throw Error(ErrorCode::Syntax, "split_measured: expected " + std::to_string(3 * wb) +
                                           " bits, got " + std::to_string(bits.size()));
    }
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorCode::Syntax, "split_measured: bitstring may contain only 0 and 1");
        }
    }
    WeightAssignment out;
    out.w3 = bits_value(std::string_view(bits).substr(0, wb));
    out.w2 = bits_value(std::string_view(bits).substr(wb, wb));
    out.w1 = bits_value(std::string_view(bits).substr(2ull * wb, wb));
    return out;
}

std::string weight_bitstring(const TrainingCircuit& training, const WeightAssignment& weights) {
    const std::uint32_t wb = training.spec.weight_bits;
    const std::uint64_t limit = 1ull << wb;
    if (weights.w1 >= limit || weights.w2 >= limit || weights.w3 >= limit) {
        throw Error(ErrorCode::Range, "weight_bitstring: weight does not fit weight_bits");
    }
    return value_bits(weights.w3, wb) + value_bits(weights.w2, wb) + value_bits(weights.w1, wb);
}

std::vector<std::string> oracle_marked_strings(const TrainingCircuit& training) {
    const std::uint32_t wb = training.spec.weight_bits;
    if (3 * wb > 18) {
        throw Error(ErrorCode::Capacity,
                    "oracle_marked_strings: sweep over more than 2^18 triples refused");
    }
    const Circuit& probe = training.oracle_probe;
    const std::size_t flag_pos = probe.qubit_position(training.flag[0]);
    const std::uint64_t limit = 1ull << wb;
    std::vector<std::string> out;
    for (std::uint64_t w3 = 0; w3 < limit; ++w3) {
        for (std::uint64_t w2 = 0; w2 < limit; ++w2) {
            for (std::uint64_t w1 = 0; w1 < limit; ++w1) {
                BasisState state(probe.total_qubits());
                state.set_register(probe, training.w1, w1);
                state.set_register(probe, training.w2, w2);
                state.set_register(probe, training.w3, w3);
                apply_basis(probe, state);
                if (state.get(flag_pos)) {
                    out.push_back(weight_bitstring(training, {w1, w2, w3}));
                }
            }
        }
    }
    return out;
}

} // namespace qsynth
