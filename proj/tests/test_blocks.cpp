// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "qsynth/blocks.hpp"
#include "qsynth/sim.hpp"
#include "qsynth/verify.hpp"

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

} // namespace

TEST_CASE("block generators are pure until appended") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 2);
    const BlockFragment fragment = adder(c, a, b);
    CHECK(fragment.label == "adder(n=2)");
    CHECK(!fragment.gates.empty());
    CHECK(c.gates().empty());
    fragment.append_to(c);
    CHECK(c.gates().size() == fragment.gates.size());
    REQUIRE(!c.annotations().empty());
    CHECK(c.annotations()[0].text == "adder(n=2)");
}

TEST_CASE("set_constant loads exactly the requested bits") {
    Circuit c;
    const RegisterHandle r = c.add_register("r", 4);
    set_constant(c, r, 11).append_to(c);
    c.plot_ancilla();
    BasisState state(c.total_qubits());
    apply_basis(c, state);
    CHECK(state.read_register(c, r) == 11);
    Circuit fresh;
    const RegisterHandle small = fresh.add_register("r", 2);
    CHECK(code_of([&] { set_constant(fresh, small, 4); }) == ErrorCode::Range);
}

TEST_CASE("adder rejects mismatched or overlapping operands") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 3);
    CHECK(code_of([&] { adder(c, a, b); }) == ErrorCode::WidthMismatch);
    CHECK(code_of([&] { adder(c, a, a); }) == ErrorCode::Overlap);
}

TEST_CASE("adder battery is exhaustive and green") {
    const SuiteResult result = verify_adder(1, 4);
    CHECK(result.cases == 340);
    CHECK(result.failures == 0);
}

TEST_CASE("carry adder xors the carry-out into the carry wire") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 2);
    const RegisterHandle carry = c.add_register("carry", 1);
    const std::vector<QubitRef> src = a.qubits();
    const std::vector<QubitRef> dst = b.qubits();
    adder_with_carry(c, src, dst, carry[0]).append_to(c);
    c.plot_ancilla();
    for (std::uint64_t av = 0; av < 4; ++av) {
        for (std::uint64_t bv = 0; bv < 4; ++bv) {
            for (std::uint64_t cv = 0; cv < 2; ++cv) {
                BasisState state(c.total_qubits());
                state.set_register(c, a, av);
                state.set_register(c, b, bv);
                state.set_register(c, carry, cv);
                apply_basis(c, state);
                CHECK(state.read_register(c, a) == av);
                CHECK(state.read_register(c, b) == ((av + bv) & 3));
                CHECK(state.read_register(c, carry) == (cv ^ ((av + bv) >> 2)));
            }
        }
    }
}

TEST_CASE("multiplier battery is exhaustive and green") {
    const SuiteResult result = verify_multiplier(3);
    CHECK(result.cases == 196);
    CHECK(result.failures == 0);
}

TEST_CASE("multiplier validates the result width and reports scratch use") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 3);
    const RegisterHandle bad = c.add_register("bad", 4);
    CHECK(code_of([&] { multiplier_asymmetric(c, a, b, bad, c.pool()); }) ==
          ErrorCode::WidthMismatch);
    const RegisterHandle r = c.add_register("r", 5);
    const BlockFragment fragment = multiplier_asymmetric(c, a, b, r, c.pool());
    CHECK(fragment.ancilla_used == 2); // one row of partial products at a time
    CHECK(c.pool().live() == 0);
    CHECK(c.pool().watermark() == 2);
}

TEST_CASE("comparator battery is exhaustive and green") {
    const SuiteResult result = verify_comparator(3);
    CHECK(result.cases == 84);
    CHECK(result.failures == 0);
}

TEST_CASE("equality flag toggles rather than overwrites") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 2);
    const RegisterHandle f = c.add_register("f", 1, Role::Flag);
    if_equal(c, a, b, f[0], c.pool()).append_to(c);
    c.plot_ancilla();
    BasisState state(c.total_qubits());
    state.set_register(c, a, 3);
    state.set_register(c, b, 3);
    state.set_register(c, f, 1);
    apply_basis(c, state);
    CHECK(state.read_register(c, f) == 0);
}

TEST_CASE("equal-width comparison demands equal widths") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 3);
    const RegisterHandle b = c.add_register("b", 2);
    const RegisterHandle f = c.add_register("f", 1, Role::Flag);
    CHECK(code_of([&] { if_equal(c, a, b, f[0], c.pool()); }) == ErrorCode::WidthMismatch);
}

TEST_CASE("zero-extended comparison handles either side being wider") {
    for (const auto& [n1, n2] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {4, 2}, {2, 4}, {3, 3}, {5, 1}}) {
        Circuit c;
        const RegisterHandle a = c.add_register("a", n1);
        const RegisterHandle b = c.add_register("b", n2);
        const RegisterHandle f = c.add_register("f", 1, Role::Flag);
        if_equal_zero_extended(c, a, b, f[0], c.pool()).append_to(c);
        c.plot_ancilla();
        for (std::uint64_t av = 0; av < (1ull << n1); ++av) {
            for (std::uint64_t bv = 0; bv < (1ull << n2); ++bv) {
                BasisState state(c.total_qubits());
                state.set_register(c, a, av);
                state.set_register(c, b, bv);
                apply_basis(c, state);
                CHECK(state.read_register(c, a) == av);
                CHECK(state.read_register(c, b) == bv);
                CHECK(state.read_register(c, f) == (av == bv ? 1 : 0));
            }
        }
    }
}

TEST_CASE("four-qubit toffoli is a single primitive with the full truth table") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 4);
    const BlockFragment fragment = toffoli_4q(c, q[0], q[1], q[2], q[3]);
    REQUIRE(fragment.gates.size() == 1);
    CHECK(fragment.gates[0].kind == GateKind::CCCX);
    fragment.append_to(c);
    c.plot_ancilla();
    for (std::uint64_t pattern = 0; pattern < 16; ++pattern) {
        BasisState state(4);
        state.set_register(c, q, pattern);
        apply_basis(c, state);
        const std::uint64_t expect = (pattern & 7) == 7 ? pattern ^ 8 : pattern;
        CHECK(state.read_register(c, q) == expect);
    }
}

TEST_CASE("small control counts avoid the pool entirely") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 4);
    const std::vector<QubitRef> one = {q[0]};
    const std::vector<QubitRef> two = {q[0], q[1]};
    const std::vector<QubitRef> three = {q[0], q[1], q[2]};
    const BlockFragment f1 = multi_control_gate_3cx(c, one, q[3], GateKind::X, c.pool());
    const BlockFragment f2 = multi_control_gate_3cx(c, two, q[3], GateKind::X, c.pool());
    const BlockFragment f3 = multi_control_gate_3cx(c, three, q[3], GateKind::X, c.pool());
    REQUIRE(f1.gates.size() == 1);
    CHECK(f1.gates[0].kind == GateKind::CX);
    REQUIRE(f2.gates.size() == 1);
    CHECK(f2.gates[0].kind == GateKind::CCX);
    REQUIRE(f3.gates.size() == 1);
    CHECK(f3.gates[0].kind == GateKind::CCCX);
    CHECK(c.pool().watermark() == 0);
}

TEST_CASE("scratch demand follows the fold formula") {
    CHECK(multi_control_ancillas(1) == 0);
    CHECK(multi_control_ancillas(3) == 0);
    CHECK(multi_control_ancillas(4) == 1);
    CHECK(multi_control_ancillas(5) == 1);
    CHECK(multi_control_ancillas(6) == 2);
    CHECK(multi_control_ancillas(7) == 2);
    CHECK(multi_control_ancillas(8) == 3);
}

TEST_CASE("wide control fans pass their truth tables") {
    const SuiteResult result = verify_mct(3, 8);
    CHECK(result.cases == 504);
    CHECK(result.failures == 0);
}

TEST_CASE("repeated appends reuse the same scratch slots") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 9);
    const std::vector<QubitRef> all = q.qubits();
    const std::vector<QubitRef> controls(all.begin(), all.begin() + 8);
    const BlockFragment fragment =
        multi_control_gate_3cx(c, controls, q[8], GateKind::X, c.pool());
    CHECK(fragment.ancilla_used == 3);
    fragment.append_to(c);
    fragment.append_to(c);
    c.plot_ancilla();
    CHECK(c.pool().watermark() == 3);
    // Appending the block twice must also be the identity.
    for (std::uint64_t pattern : {0ull, 255ull, 170ull}) {
        BasisState state(c.total_qubits());
        state.set_register(c, q, pattern);
        apply_basis(c, state);
        CHECK(state.read_register(c, q) == pattern);
    }
}

TEST_CASE("phase payload needs no scratch beyond the fold and stays exact") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 3);
    const std::vector<QubitRef> controls = {q[0], q[1]};
    multi_control_z(c, controls, q[2], c.pool()).append_to(c);
    c.plot_ancilla();
    const UnitaryMatrix u = unitary_of(c);
    for (std::size_t row = 0; row < 8; ++row) {
        for (std::size_t col = 0; col < 8; ++col) {
            const double expect = row == col ? (row == 7 ? -1.0 : 1.0) : 0.0;
            CHECK(std::abs(u.at(row, col) - expect) < 1e-12);
        }
    }
}

TEST_CASE("uncontrolled phase payload is a bare z") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 1);
    const std::vector<QubitRef> none;
    const BlockFragment fragment = multi_control_z(c, none, q[0], c.pool());
    REQUIRE(fragment.gates.size() == 1);
    CHECK(fragment.gates[0].kind == GateKind::Z);
}

TEST_CASE("control fan rejects overlap and odd payloads") {
    Circuit c;
    const RegisterHandle q = c.add_register("q", 3);
    const std::vector<QubitRef> overlap = {q[0], q[1]};
    CHECK(code_of([&] { multi_control_gate_3cx(c, overlap, q[1], GateKind::X, c.pool()); }) ==
          ErrorCode::Overlap);
    CHECK(code_of([&] { multi_control_gate_3cx(c, overlap, q[2], GateKind::H, c.pool()); }) ==
          ErrorCode::Range);
}

TEST_CASE("every block is undone by its reversal") {
    Circuit c;
    const RegisterHandle a = c.add_register("a", 3);
    const RegisterHandle b = c.add_register("b", 3);
    const RegisterHandle r = c.add_register("r", 6);
    const RegisterHandle f = c.add_register("f", 1, Role::Flag);
    const BlockFragment mult = multiplier_asymmetric(c, a, b, r, c.pool());
    const BlockFragment cmp = if_equal(c, a, b, f[0], c.pool());
    const BlockFragment rev_mult = reversed(mult);
    CHECK(rev_mult.label == "reversed multiplier(n1=3,n2=3)");
    mult.append_to(c);
    rev_mult.append_to(c);
    cmp.append_to(c);
    reversed(cmp).append_to(c);
    c.plot_ancilla();
    for (std::uint64_t av : {0ull, 3ull, 7ull}) {
        for (std::uint64_t bv : {0ull, 5ull, 7ull}) {
            BasisState state(c.total_qubits());
            state.set_register(c, a, av);
            state.set_register(c, b, bv);
            apply_basis(c, state);
            CHECK(state.read_register(c, a) == av);
            CHECK(state.read_register(c, b) == bv);
            CHECK(state.read_register(c, r) == 0);
            CHECK(state.read_register(c, f) == 0);
        }
    }
}

TEST_CASE("fragments refuse pools from other circuits") {
    Circuit c;
    Circuit other;
    const RegisterHandle a = c.add_register("a", 2);
    const RegisterHandle b = c.add_register("b", 2);
    const RegisterHandle r = c.add_register("r", 4);
    CHECK(code_of([&] { multiplier_asymmetric(c, a, b, r, other.pool()); }) ==
          ErrorCode::DanglingReference);
}
