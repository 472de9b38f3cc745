// SPDX-License-Identifier: MIT
#include "qsynth/blocks.hpp"

#include <algorithm>

namespace qsynth {

namespace {

// Blocks take their pool explicitly, but slots only make sense against the
// owning circuit's pool.
void check_pool(const Circuit& circuit, const AncillaPool& pool, const char* what) {
    if (&pool != &circuit.pool()) {
        throw Error(ErrorCode::DanglingReference,
                    std::string(what) + ": pool does not belong to this circuit");
    }
}

void check_handle(const Circuit& circuit, RegisterHandle reg, const char* what) {
    const RegisterInfo& info = circuit.register_info(reg.id);
    if (info.width != reg.width) {
        throw Error(ErrorCode::DanglingReference, std::string(what) + ": stale register handle '" +
                                                      info.name + "'");
    }
}

// Collects a block's gates and tracks pool usage relative to entry, so nested
// blocks account their scratch qubits to the enclosing fragment.
class Recorder {
public:
    Recorder(Circuit& circuit, std::string label)
        : circuit_(circuit), label_(std::move(label)), entry_live_(circuit.pool().live()) {}

    void add(Gate gate) {
        for (QubitRef ref : gate.qubits()) {
            check_ref(ref);
        }
        gates_.push_back(std::move(gate));
    }

    void add(std::vector<Gate> gates) {
        for (Gate& gate : gates) {
            add(std::move(gate));
        }
    }

    // Splices in a fragment built just now against the same pool; its peak
    // usage sits on top of whatever this block still holds.
    void absorb(const BlockFragment& fragment) {
        peak_ = std::max(peak_, circuit_.pool().live() - entry_live_ + fragment.ancilla_used);
        gates_.insert(gates_.end(), fragment.gates.begin(), fragment.gates.end());
    }

    std::vector<QubitRef> acquire(std::uint32_t n) {
        std::vector<QubitRef> refs = circuit_.pool().acquire(n);
        peak_ = std::max(peak_, circuit_.pool().live() - entry_live_);
        return refs;
    }

    void release(std::span<const QubitRef> refs) { circuit_.pool().release(refs); }

    BlockFragment finish() {
        BlockFragment fragment;
        fragment.label = std::move(label_);
        fragment.gates = std::move(gates_);
        fragment.ancilla_used = peak_;
        for (const Gate& gate : fragment.gates) {
            for (QubitRef ref : gate.qubits()) {
                fragment.touched.push_back(ref);
            }
        }
        std::sort(fragment.touched.begin(), fragment.touched.end());
        fragment.touched.erase(std::unique(fragment.touched.begin(), fragment.touched.end()),
                               fragment.touched.end());
        return fragment;
    }

private:
    void check_ref(QubitRef ref) const {
        if (ref.reg == kAncillaReg) {
            if (ref.index >= circuit_.pool().watermark()) {
                throw Error(ErrorCode::DanglingReference, "pool qubit was never acquired");
            }
            return;
        }
        const RegisterInfo& info = circuit_.register_info(ref.reg);
        if (ref.index >= info.width) {
            throw Error(ErrorCode::Range,
                        "qubit index out of range for register '" + info.name + "'");
        }
    }

    Circuit& circuit_;
    std::string label_;
    std::uint32_t entry_live_ = 0;
    std::uint32_t peak_ = 0;
    std::vector<Gate> gates_;
};

void require_distinct(std::span<const QubitRef> refs, const std::string& what) {
    std::vector<QubitRef> sorted(refs.begin(), refs.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::Overlap, what + ": duplicate qubit operand");
    }
}

// dst += src (mod 2^n); carries ripple forward through src's own bits and are
// unwound on the way back, leaving src unchanged. With a carry wire the top
// carry is tapped into it before the unwind.
void emit_add(Recorder& rec, std::span<const QubitRef> src, std::span<const QubitRef> dst,
              const QubitRef* carry) {
    const std::size_t n = dst.size();
    if (n == 1 && carry == nullptr) {
        rec.add(Gate::cx(src[0], dst[0]));
        return;
    }
    for (std::size_t i = 1; i < n; ++i) {
        rec.add(Gate::cx(src[i], dst[i]));
    }
    if (carry != nullptr && n > 1) {
        rec.add(Gate::cx(src[n - 1], *carry));
    }
    for (std::size_t i = n - 1; i >= 2; --i) {
        rec.add(Gate::cx(src[i - 1], src[i]));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        rec.add(Gate::ccx(src[i], dst[i], src[i + 1]));
    }
    if (carry != nullptr) {
        rec.add(Gate::ccx(src[n - 1], dst[n - 1], *carry));
    }
    for (std::size_t i = n - 1; i >= 1; --i) {
        rec.add(Gate::cx(src[i], dst[i]));
        rec.add(Gate::ccx(dst[i - 1], src[i - 1], src[i]));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        rec.add(Gate::cx(src[i], src[i + 1]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        rec.add(Gate::cx(src[i], dst[i]));
    }
}

void check_add_operands(std::span<const QubitRef> src, std::span<const QubitRef> dst,
                        const QubitRef* carry, const std::string& what) {
    if (src.size() != dst.size()) {
        throw Error(ErrorCode::WidthMismatch, what + ": operand widths differ (" +
                                                  std::to_string(src.size()) + " vs " +
                                                  std::to_string(dst.size()) + ")");
    }
    if (src.empty()) {
        throw Error(ErrorCode::InvalidWidth, what + ": zero-width operand");
    }
    std::vector<QubitRef> all(src.begin(), src.end());
    all.insert(all.end(), dst.begin(), dst.end());
    if (carry != nullptr) {
        all.push_back(*carry);
    }
    require_distinct(all, what);
}

// Shared body of the two comparator entry points. Condition bits live on the
// XNOR side; surplus bits of the longer operand are inverted in place, which
// compares them against an implicit zero extension.
BlockFragment equality_block(Circuit& circuit, RegisterHandle i1, RegisterHandle i2, QubitRef flag,
                             AncillaPool& pool, bool allow_mismatch) {
    check_pool(circuit, pool, "if_equal");
    check_handle(circuit, i1, "if_equal");
    check_handle(circuit, i2, "if_equal");
    if (i1.width != i2.width && !allow_mismatch) {
        throw Error(ErrorCode::WidthMismatch, "if_equal: register widths differ (" +
                                                  std::to_string(i1.width) + " vs " +
                                                  std::to_string(i2.width) + ")");
    }
    const std::vector<QubitRef> a = i1.qubits();
    const std::vector<QubitRef> b = i2.qubits();
    std::vector<QubitRef> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    all.push_back(flag);
    require_distinct(all, "if_equal");

    Recorder rec(circuit, "if_equal(n1=" + std::to_string(i1.width) +
                              ",n2=" + std::to_string(i2.width) + ")");
    const std::size_t shared = std::min(a.size(), b.size());
    std::vector<Gate> compute;
    std::vector<QubitRef> condition;
    for (std::size_t i = 0; i < shared; ++i) {
        compute.push_back(Gate::cx(a[i], b[i]));
        compute.push_back(Gate::x(b[i]));
        condition.push_back(b[i]);
    }
    for (std::size_t i = shared; i < a.size(); ++i) {
        compute.push_back(Gate::x(a[i]));
        condition.push_back(a[i]);
    }
    for (std::size_t i = shared; i < b.size(); ++i) {
        compute.push_back(Gate::x(b[i]));
        condition.push_back(b[i]);
    }
    std::vector<Gate> uncompute = reversed(std::span<const Gate>(compute));
    rec.add(std::move(compute));
    rec.absorb(multi_control_gate_3cx(circuit, condition, flag, GateKind::X, pool));
    rec.add(std::move(uncompute));
    return rec.finish();
}

} // namespace

void BlockFragment::append_to(Circuit& circuit) const {
    if (!label.empty()) {
        circuit.annotate(label);
    }
    for (const Gate& gate : gates) {
        circuit.append(gate);
    }
}

BlockFragment reversed(const BlockFragment& fragment) {
    BlockFragment out = fragment;
    std::reverse(out.gates.begin(), out.gates.end());
    if (!out.label.empty()) {
        out.label = "reversed " + out.label;
    }
    return out;
}

BlockFragment set_constant(Circuit& circuit, RegisterHandle reg, std::uint64_t value) {
    check_handle(circuit, reg, "set_constant");
    if (reg.width < 64 && value >= (std::uint64_t{1} << reg.width)) {
        throw Error(ErrorCode::Range, "set_constant: value " + std::to_string(value) +
                                          " does not fit " + std::to_string(reg.width) + " bits");
    }
    Recorder rec(circuit, "set_constant(width=" + std::to_string(reg.width) +
                              ",value=" + std::to_string(value) + ")");
    for (std::uint32_t i = 0; i < reg.width; ++i) {
        if ((value >> i) & 1u) {
            rec.add(Gate::x(reg[i]));
        }
    }
    return rec.finish();
}

BlockFragment adder_spans(Circuit& circuit, std::span<const QubitRef> src,
                          std::span<const QubitRef> dst) {
    check_add_operands(src, dst, nullptr, "adder");
    Recorder rec(circuit, "adder(n=" + std::to_string(dst.size()) + ")");
    emit_add(rec, src, dst, nullptr);
    return rec.finish();
}

BlockFragment adder(Circuit& circuit, RegisterHandle i1, RegisterHandle i2) {
    check_handle(circuit, i1, "adder");
    check_handle(circuit, i2, "adder");
    const std::vector<QubitRef> src = i1.qubits();
    const std::vector<QubitRef> dst = i2.qubits();
    return adder_spans(circuit, src, dst);
}

BlockFragment adder_with_carry(Circuit& circuit, std::span<const QubitRef> src,
                               std::span<const QubitRef> dst, QubitRef carry) {
    check_add_operands(src, dst, &carry, "adder_with_carry");
    Recorder rec(circuit, "adder_with_carry(n=" + std::to_string(dst.size()) + ")");
    emit_add(rec, src, dst, &carry);
    return rec.finish();
}

BlockFragment multiplier_asymmetric(Circuit& circuit, RegisterHandle i1, RegisterHandle i2,
                                    RegisterHandle result, AncillaPool& pool) {
    check_pool(circuit, pool, "multiplier");
    check_handle(circuit, i1, "multiplier");
    check_handle(circuit, i2, "multiplier");
    check_handle(circuit, result, "multiplier");
    const std::uint32_t n1 = i1.width;
    const std::uint32_t n2 = i2.width;
    if (result.width != n1 + n2) {
        throw Error(ErrorCode::WidthMismatch,
                    "multiplier: result width must be " + std::to_string(n1 + n2) + ", got " +
                        std::to_string(result.width));
    }
    const std::vector<QubitRef> a = i1.qubits();
    const std::vector<QubitRef> b = i2.qubits();
    const std::vector<QubitRef> res = result.qubits();
    std::vector<QubitRef> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    all.insert(all.end(), res.begin(), res.end());
    require_distinct(all, "multiplier");

    Recorder rec(circuit,
                 "multiplier(n1=" + std::to_string(n1) + ",n2=" + std::to_string(n2) + ")");
    for (std::uint32_t k = 0; k < n2; ++k) {
        std::vector<QubitRef> partial = rec.acquire(n1);
        std::vector<Gate> load;
        load.reserve(n1);
        for (std::uint32_t j = 0; j < n1; ++j) {
            load.push_back(Gate::ccx(a[j], b[k], partial[j]));
        }
        std::vector<Gate> unload = reversed(std::span<const Gate>(load));
        rec.add(std::move(load));
        const std::span<const QubitRef> window(res.data() + k, n1);
        emit_add(rec, partial, window, &res[k + n1]);
        rec.add(std::move(unload));
        rec.release(partial);
    }
    return rec.finish();
}

BlockFragment if_equal(Circuit& circuit, RegisterHandle i1, RegisterHandle i2, QubitRef flag,
                       AncillaPool& pool) {
    return equality_block(circuit, i1, i2, flag, pool, false);
}

BlockFragment if_equal_zero_extended(Circuit& circuit, RegisterHandle i1, RegisterHandle i2,
                                     QubitRef flag, AncillaPool& pool) {
    return equality_block(circuit, i1, i2, flag, pool, true);
}

BlockFragment toffoli_4q(Circuit& circuit, QubitRef c0, QubitRef c1, QubitRef c2, QubitRef target) {
    Recorder rec(circuit, "toffoli_4q");
    rec.add(Gate::cccx(c0, c1, c2, target));
    return rec.finish();
}

std::uint32_t multi_control_ancillas(std::size_t k) {
    if (k <= 3) {
        return 0;
    }
    return static_cast<std::uint32_t>((k - 2) / 2);
}

BlockFragment multi_control_gate_3cx(Circuit& circuit, std::span<const QubitRef> controls,
                                     QubitRef target, GateKind kind, AncillaPool& pool) {
    check_pool(circuit, pool, "multi_control_gate_3cx");
    if (kind != GateKind::X && kind != GateKind::Z) {
        throw Error(ErrorCode::Range, "multi_control_gate_3cx: payload must be X or Z");
    }
    std::vector<QubitRef> all(controls.begin(), controls.end());
    all.push_back(target);
    require_distinct(all, "multi_control_gate_3cx");

    const std::size_t k = controls.size();
    Recorder rec(circuit, std::string(kind == GateKind::X ? "mct" : "mcz") +
                              "(k=" + std::to_string(k) + ")");

    // Fold controls into pool qubits until at most three inputs feed the
    // final gate; then replay the fold in reverse.
    std::vector<Gate> chain;
    std::vector<QubitRef> scratch;
    std::vector<QubitRef> final_controls;
    if (k <= 3) {
        final_controls.assign(controls.begin(), controls.end());
    } else {
        scratch = rec.acquire(multi_control_ancillas(k));
        std::size_t folded = 3;
        std::size_t level = 0;
        chain.push_back(Gate::cccx(controls[0], controls[1], controls[2], scratch[0]));
        while (k - folded > 2) {
            chain.push_back(Gate::cccx(scratch[level], controls[folded], controls[folded + 1],
                                       scratch[level + 1]));
            folded += 2;
            ++level;
        }
        final_controls.push_back(scratch[level]);
        for (std::size_t i = folded; i < k; ++i) {
            final_controls.push_back(controls[i]);
        }
    }

    std::vector<Gate> unchain = reversed(std::span<const Gate>(chain));
    rec.add(std::move(chain));
    // An uncontrolled Z payload stays a plain Z; the Hadamard pair around the
    // controlled payload's target turns controlled X into controlled Z
    // exactly.
    const bool wrap = kind == GateKind::Z && !final_controls.empty();
    if (wrap) {
        rec.add(Gate::h(target));
    }
    switch (final_controls.size()) {
    case 0:
        rec.add(kind == GateKind::Z ? Gate::z(target) : Gate::x(target));
        break;
    case 1: rec.add(Gate::cx(final_controls[0], target)); break;
    case 2: rec.add(Gate::ccx(final_controls[0], final_controls[1], target)); break;
    default:
        rec.add(Gate::cccx(final_controls[0], final_controls[1], final_controls[2], target));
        break;
    }
    if (wrap) {
        rec.add(Gate::h(target));
    }
    rec.add(std::move(unchain));
    if (!scratch.empty()) {
        rec.release(scratch);
    }
    return rec.finish();
}

BlockFragment multi_control_z(Circuit& circuit, std::span<const QubitRef> controls, QubitRef target,
                              AncillaPool& pool) {
    return multi_control_gate_3cx(circuit, controls, target, GateKind::Z, pool);
}

} // namespace qsynth
