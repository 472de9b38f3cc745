// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qsynth/perceptron.hpp"
#include "qsynth/qasm.hpp"
#include "qsynth/sim.hpp"

using namespace qsynth;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& error) {
        return error.code();
    }
    FAIL("expected an error");
    return ErrorCode::Syntax;
}

ParseError parse_error_of(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const ParseError& error) {
        return error;
    }
    FAIL("expected a parse error");
    return ParseError(0, 0, "unreachable");
}

Circuit tiny_measured_circuit() {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 1);
    const RegisterHandle b = c.add_register("b", 2);
    c.annotate("entangle");
    c.append(Gate::cx(a[0], b[1]));
    c.append(Gate::x(b[0]));
    c.set_measured({b});
    c.plot_ancilla();
    return c;
}

} // namespace

TEST_CASE("emission is byte-exact for a known circuit") {
    const Circuit c = tiny_measured_circuit();
    const std::string expected = "OPENQASM 2.0;\n"
                                 "include \"qelib1.inc\";\n"
                                 "qreg a[1];\n"
                                 "qreg b[2];\n"
                                 "creg meas[2];\n"
                                 "cx a[0], b[1];\n"
                                 "x b[0];\n"
                                 "measure b[0] -> meas[0];\n"
                                 "measure b[1] -> meas[1];\n";
    CHECK(emit(c) == expected);
    CHECK(emit(c) == emit(c));

    EmitOptions with_comments;
    with_comments.include_comments = true;
    const std::string commented = emit(c, with_comments);
    CHECK(commented.find("// block: entangle\ncx a[0], b[1];\n") != std::string::npos);
}

TEST_CASE("triply-controlled x renders natively or as three toffolis") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 4);
    c.append(Gate::cccx(q[0], q[1], q[2], q[3]));
    c.plot_ancilla();

    CHECK(emit(c) == "OPENQASM 2.0;\n"
                     "include \"qelib1.inc\";\n"
                     "qreg q[4];\n"
                     "c3x q[0], q[1], q[2], q[3];\n");

    EmitOptions decompose;
    decompose.cccx = CccxMode::DecomposeCcx;
    CHECK(emit(c, decompose) == "OPENQASM 2.0;\n"
                                "include \"qelib1.inc\";\n"
                                "qreg q[4];\n"
                                "qreg c3x_anc[1];\n"
                                "ccx q[0], q[1], c3x_anc[0];\n"
                                "ccx c3x_anc[0], q[2], q[3];\n"
                                "ccx q[0], q[1], c3x_anc[0];\n");
}

TEST_CASE("decompose mode adds no helper register without a wide gate") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 2);
    c.append(Gate::cx(q[0], q[1]));
    c.plot_ancilla();
    EmitOptions decompose;
    decompose.cccx = CccxMode::DecomposeCcx;
    CHECK(emit(c, decompose).find("c3x_anc") == std::string::npos);
}

TEST_CASE("pool qubits render through the materialized register") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 2);
    const std::vector<QubitRef> slots = c.pool().acquire(1);
    c.append(Gate::ccx(q[0], q[1], slots[0]));
    c.pool().release(slots);

    CHECK(code_of([&] { (void)emit(c); }) == ErrorCode::UnbalancedAncilla);
    c.plot_ancilla();
    const std::string text = emit(c);
    CHECK(text.find("qreg anc[1];\n") != std::string::npos);
    CHECK(text.find("ccx q[0], q[1], anc[0];\n") != std::string::npos);
}

TEST_CASE("multi-target x gates flatten to one line per target") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 3);
    c.append(Gate::multi_x({q[0], q[2]}));
    c.plot_ancilla();
    const std::string text = emit(c);
    CHECK(text.find("x q[0];\nx q[2];\n") != std::string::npos);
}

TEST_CASE("parsing accepts whitespace and comment variations") {
    const std::string canonical = "OPENQASM 2.0;\n"
                                  "include \"qelib1.inc\";\n"
                                  "qreg q[2];\n"
                                  "cx q[0], q[1];\n";
    const std::string noisy = "OPENQASM 2.0;\n"
                              "include \"qelib1.inc\";\n"
                              "\n"
                              "// a comment line\n"
                              "qreg   q[2] ;\n"
                              "cx q[0],q[1];  // trailing note\n";
    CHECK(emit(parse(noisy)) == canonical);
}

TEST_CASE("round trips are byte stable") {
    const Circuit tiny = tiny_measured_circuit();
    const std::string once = emit(tiny);
    CHECK(emit(parse(once)) == once);

    PerceptronSpec spec;
    spec.i1_value = 1;
    spec.i2_value = 1;
    spec.ac_value = 2;
    spec.weight_bits = 1;
    spec.ac_bits = 2;
    const TrainingCircuit training = build_training_circuit(spec);
    const std::string text = emit(training.circuit);
    CHECK(emit(parse(text)) == text);

    EmitOptions decompose;
    decompose.cccx = CccxMode::DecomposeCcx;
    const std::string lowered = emit(training.circuit, decompose);
    // The lowered text has no c3x left, so re-emission is mode-independent.
    CHECK(emit(parse(lowered)) == lowered);
}

TEST_CASE("parsed circuits preserve structure") {
    const Circuit original = tiny_measured_circuit();
    const Circuit parsed = parse(emit(original));
    CHECK(parsed.num_registers() == 2);
    CHECK(parsed.total_qubits() == 3);
    CHECK(parsed.gates().size() == 2);
    CHECK(parsed.gates()[0].kind == GateKind::CX);
    REQUIRE(parsed.measured().size() == 1);
    CHECK(parsed.register_info(parsed.measured()[0]).name == "b");
}

TEST_CASE("the lowered wide gate is exact on a zeroed helper") {
    Circuit c;
    const RegisterHandle ctl = c.add_register("ctl", 3);
    const RegisterHandle t = c.add_register("t", 1);
    c.append(Gate::cccx(ctl[0], ctl[1], ctl[2], t[0]));
    c.plot_ancilla();
    EmitOptions decompose;
    decompose.cccx = CccxMode::DecomposeCcx;
    const Circuit lowered = parse(emit(c, decompose));
    REQUIRE(lowered.total_qubits() == 5);
    for (std::uint64_t pattern = 0; pattern < 16; ++pattern) {
        BasisState state(5);
        state.set_register(lowered, lowered.handle(*lowered.find_register("ctl")), pattern & 7);
        state.set_register(lowered, lowered.handle(*lowered.find_register("t")), pattern >> 3);
        apply_basis(lowered, state);
        const std::uint64_t expect_t = (pattern >> 3) ^ ((pattern & 7) == 7 ? 1 : 0);
        CHECK(state.read_register(lowered, lowered.handle(*lowered.find_register("t"))) ==
              expect_t);
        CHECK(state.read_register(lowered, lowered.handle(*lowered.find_register("c3x_anc"))) ==
              0);
    }
}

TEST_CASE("parse reports 1-based positions") {
    const ParseError bad_version = parse_error_of("OPENQASM 3.0;\ninclude \"qelib1.inc\";\n");
    CHECK(bad_version.line() == 1);
    CHECK(std::string(bad_version.what()).find("version") != std::string::npos);

    const ParseError unknown = parse_error_of("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                                              "qreg q[1];\nfoo q[0];\n");
    CHECK(unknown.line() == 4);
    CHECK(unknown.column() == 1);
    CHECK(std::string(unknown.what()).find("line 4, column 1") != std::string::npos);

    const ParseError missing = parse_error_of("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n"
                                              "qreg q[1];\nx w[0];\n");
    CHECK(missing.line() == 4);
    CHECK(missing.column() == 3);
}

TEST_CASE("parse rejects malformed programs") {
    const std::string header = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    CHECK(parse_error_of("").line() == 1);
    CHECK(parse_error_of(header + "qreg q[0];\n").line() == 3);
    CHECK(parse_error_of(header + "qreg q[1];\nqreg q[1];\n").line() == 4);
    CHECK(parse_error_of(header + "qreg q[2];\nx q[5];\n").line() == 4);
    CHECK(parse_error_of(header + "qreg q[2];\ncx q[0], q[0];\n").line() == 4);
    CHECK(parse_error_of(header + "qreg q[2];\ncx q[0];\n").line() == 4);
    CHECK(parse_error_of(header + "qreg q[1];\nx q[0]\n").line() == 5);
    CHECK(parse_error_of(header + "creg c[2];\n").line() == 3);
    CHECK(parse_error_of(header + "qreg q[1];\nmeasure q[0] -> meas[0];\n").line() == 4);
    CHECK(parse_error_of(header + "qreg q[2];\ncreg meas[2];\n"
                                  "measure q[0] -> meas[1];\n")
              .line() == 5);
    CHECK(parse_error_of(header + "qreg q[2];\ncreg meas[1];\n"
                                  "measure q[0] -> meas[0];\n")
              .line() == 6); // q measured only partially, reported at the end
    CHECK(parse_error_of(header + "qreg q[1];\ncreg meas[1];\n"
                                  "measure q[0] -> meas[0];\nx q[0];\n")
              .line() == 6);
    CHECK(parse_error_of(header + "qreg q[1];\ncreg meas[2];\n"
                                  "measure q[0] -> meas[0];\n")
              .line() == 6);
    CHECK(parse_error_of(header + "creg meas[1];\nqreg q[1];\nx q[0];\n").line() == 6);
}

TEST_CASE("the golden trainer program stays pinned") {
    PerceptronSpec spec;
    spec.i1_value = 1;
    spec.i2_value = 1;
    spec.ac_value = 2;
    spec.weight_bits = 1;
    spec.ac_bits = 2;
    const TrainingCircuit training = build_training_circuit(spec);
    EmitOptions options;
    options.include_comments = true;
    const std::string text = emit(training.circuit, options);

    std::ifstream golden(std::string(QSYNTH_GOLDEN_DIR) + "/trainer_small.qasm",
                         std::ios::binary);
    REQUIRE(golden.is_open());
    std::ostringstream buffer;
    buffer << golden.rdbuf();
    CHECK(text == buffer.str());
}
