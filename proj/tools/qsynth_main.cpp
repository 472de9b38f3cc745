// SPDX-License-Identifier: MIT
#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qsynth/blocks.hpp"
#include "qsynth/perceptron.hpp"
#include "qsynth/qasm.hpp"
#include "qsynth/sim.hpp"
#include "qsynth/verify.hpp"

namespace {

using namespace qsynth;

EmitOptions emit_options(const std::string& cccx, bool comments) {
    EmitOptions options;
    options.cccx = cccx == "decompose" ? CccxMode::DecomposeCcx : CccxMode::NativeC3x;
    options.include_comments = comments;
    return options;
}

int write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    return 0;
}

int run_synth(const std::string& block, const std::vector<std::uint32_t>& widths,
              const std::string& out_path, const std::string& cccx, bool comments) {
    Circuit circuit;
    BlockFragment fragment;
    if (block == "adder") {
        if (widths.size() != 1) {
            std::cerr << "error: adder takes one width\n";
            return 1;
        }
        const RegisterHandle a = circuit.add_register("a", widths[0]);
        const RegisterHandle b = circuit.add_register("b", widths[0]);
        fragment = adder(circuit, a, b);
    } else if (block == "multiplier") {
        if (widths.size() != 2) {
            std::cerr << "error: multiplier takes two widths\n";
            return 1;
        }
        const RegisterHandle a = circuit.add_register("a", widths[0]);
        const RegisterHandle b = circuit.add_register("b", widths[1]);
        const RegisterHandle r = circuit.add_register("r", widths[0] + widths[1]);
        fragment = multiplier_asymmetric(circuit, a, b, r, circuit.pool());
    } else if (block == "comparator") {
        if (widths.empty() || widths.size() > 2) {
            std::cerr << "error: comparator takes one or two widths\n";
            return 1;
        }
        const std::uint32_t n1 = widths[0];
        const std::uint32_t n2 = widths.size() == 2 ? widths[1] : widths[0];
        const RegisterHandle a = circuit.add_register("a", n1);
        const RegisterHandle b = circuit.add_register("b", n2);
        const RegisterHandle f = circuit.add_register("f", 1, Role::Flag);
        fragment = if_equal_zero_extended(circuit, a, b, f[0], circuit.pool());
    } else {
        if (widths.size() != 1) {
            std::cerr << "error: " << block << " takes one width (the control count)\n";
            return 1;
        }
        const RegisterHandle c = circuit.add_register("c", widths[0]);
        const RegisterHandle t = circuit.add_register("t", 1);
        const std::vector<QubitRef> controls = c.qubits();
        const GateKind kind = block == "mcz" ? GateKind::Z : GateKind::X;
        fragment = multi_control_gate_3cx(circuit, controls, t[0], kind, circuit.pool());
    }
    fragment.append_to(circuit);
    circuit.plot_ancilla();
    const std::string text = emit(circuit, emit_options(cccx, comments));
    if (const int rc = write_file(out_path, text); rc != 0) {
        return rc;
    }
    std::cout << "block=" << fragment.label << " qubits=" << circuit.total_qubits()
              << " gates=" << circuit.gates().size() << " pool=" << circuit.pool().watermark()
              << " out=" << out_path << "\n";
    return 0;
}

int run_train(std::uint64_t i1, std::uint64_t i2, std::uint64_t ac, std::uint32_t weight_bits,
              std::uint32_t ac_bits, std::uint64_t shots, std::uint64_t seed,
              std::int64_t iterations, bool emit_only, std::size_t cap,
              const std::string& out_path, const std::string& cccx, bool comments) {
    PerceptronSpec spec;
    spec.i1_value = i1;
    spec.i2_value = i2;
    spec.ac_value = ac;
    spec.weight_bits = weight_bits;
    spec.ac_bits = ac_bits != 0
                       ? ac_bits
                       : static_cast<std::uint32_t>(64 - std::countl_zero(ac | 1ull));
    std::optional<std::size_t> override_iterations;
    if (iterations >= 0) {
        override_iterations = static_cast<std::size_t>(iterations);
    }
    TrainingCircuit training = build_training_circuit(spec, override_iterations);
    const std::string text = emit(training.circuit, emit_options(cccx, comments));
    if (const int rc = write_file(out_path, text); rc != 0) {
        return rc;
    }
    std::cout << "qubits=" << training.circuit.total_qubits()
              << " gates=" << training.circuit.gates().size()
              << " iterations=" << training.iterations
              << " solutions=" << training.num_solutions << " out=" << out_path << "\n";

    if (3 * spec.weight_bits <= 18) {
        const std::vector<std::string> marked = oracle_marked_strings(training);
        std::vector<std::string> expected;
        for (const WeightAssignment& w : enumerate_solutions(spec)) {
            expected.push_back(weight_bitstring(training, w));
        }
        std::sort(expected.begin(), expected.end());
        if (marked != expected) {
            std::cerr << "error: oracle marks " << marked.size() << " pattern(s), classical "
                      << "enumeration finds " << expected.size() << "\n";
            return 1;
        }
        std::cout << "oracle check: ok, " << marked.size() << " marked pattern(s)\n";
    }

    if (emit_only) {
        return 0;
    }
    if (cap > 26) {
        std::cerr << "error: dense cap above 26 qubits is not supported\n";
        return 1;
    }
    if (training.circuit.total_qubits() > cap) {
        std::cerr << "error: the circuit needs " << training.circuit.total_qubits()
                  << " qubits, beyond the dense-simulation cap of " << cap
                  << "; rerun with --emit-only\n";
        return 1;
    }
    StateVector state(training.circuit.total_qubits(), cap);
    apply_full(training.circuit, state);
    const std::vector<std::size_t> positions = training.circuit.measured_positions();
    const Histogram histogram = measure_qubits(state, positions, shots, seed);
    std::cout << histogram.serialize();

    std::string modal;
    std::uint64_t best = 0;
    for (const auto& [bits, count] : histogram.counts) {
        if (count > best) {
            best = count;
            modal = bits;
        }
    }
    if (!modal.empty()) {
        const WeightAssignment w = split_measured(training, modal);
        const bool satisfies = (i1 * w.w1 + i2 * w.w2) * w.w3 == ac;
        std::cout << "modal " << modal << " (" << best << "/" << shots << "): w1=" << w.w1
                  << " w2=" << w.w2 << " w3=" << w.w3 << ", "
                  << (satisfies ? "satisfies" : "does not satisfy") << " the training equation\n";
    }
    return 0;
}

int run_verify(const std::string& scope) {
    std::vector<SuiteResult> results;
    if (scope == "all") {
        results = verify_all();
    } else if (scope == "adder") {
        results.push_back(verify_adder(1, 4));
    } else if (scope == "multiplier") {
        results.push_back(verify_multiplier(3));
    } else if (scope == "comparator") {
        results.push_back(verify_comparator(3));
    } else {
        results.push_back(verify_mct(3, 8));
    }
    bool ok = true;
    for (const SuiteResult& result : results) {
        std::cout << result.name << ": " << result.cases << " cases, " << result.failures
                  << " failure(s)\n";
        for (const std::string& note : result.notes) {
            std::cout << "  note: " << note << "\n";
        }
        ok = ok && result.ok();
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible-logic circuit synthesizer with a search-based trainer"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "Synthesize a single block and write its program");
    std::string block;
    std::vector<std::uint32_t> widths;
    std::string synth_out;
    std::string synth_cccx = "native";
    bool synth_comments = false;
    synth->add_option("block", block, "Block kind")
        ->required()
        ->check(CLI::IsMember({"adder", "multiplier", "comparator", "mct", "mcz"}));
    synth->add_option("--widths", widths, "Register widths (comma separated)")
        ->required()
        ->delimiter(',');
    synth->add_option("--out", synth_out, "Output program path")->required();
    synth->add_option("--cccx", synth_cccx, "Triply-controlled X rendering")
        ->check(CLI::IsMember({"native", "decompose"}));
    synth->add_flag("--comments", synth_comments, "Write block comments");

    auto* train = app.add_subcommand("train", "Assemble and run the weight-training search");
    std::uint64_t i1 = 0, i2 = 0, ac = 0;
    std::uint32_t weight_bits = 0, ac_bits = 0;
    std::uint64_t shots = 4096, seed = 1;
    std::int64_t iterations = -1;
    bool emit_only = false;
    std::size_t cap = kDefaultDenseCap;
    std::string train_out;
    std::string train_cccx = "native";
    bool train_comments = false;
    train->add_option("--i1", i1, "First input value")->required();
    train->add_option("--i2", i2, "Second input value")->required();
    train->add_option("--ac", ac, "Target value")->required();
    train->add_option("--weight-bits", weight_bits, "Bits per weight")->required();
    train->add_option("--ac-bits", ac_bits, "Bits of the target register (0 = fit the value)");
    train->add_option("--shots", shots, "Samples to draw");
    train->add_option("--seed", seed, "Sampler seed");
    train->add_option("--iterations", iterations, "Override the round count (-1 = automatic)");
    train->add_flag("--emit-only", emit_only, "Skip simulation");
    train->add_option("--cap", cap, "Dense-simulation qubit cap");
    train->add_option("--out", train_out, "Output program path")->required();
    train->add_option("--cccx", train_cccx, "Triply-controlled X rendering")
        ->check(CLI::IsMember({"native", "decompose"}));
    train->add_flag("--comments", train_comments, "Write block comments");

    auto* verify = app.add_subcommand("verify", "Check synthesized blocks against arithmetic");
    std::string scope = "all";
    verify->add_option("scope", scope, "Which battery to run")
        ->check(CLI::IsMember({"all", "adder", "multiplier", "comparator", "mct"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) {
            return run_synth(block, widths, synth_out, synth_cccx, synth_comments);
        }
        if (train->parsed()) {
            return run_train(i1, i2, ac, weight_bits, ac_bits, shots, seed, iterations, emit_only,
                             cap, train_out, train_cccx, train_comments);
        }
        return run_verify(scope);
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
