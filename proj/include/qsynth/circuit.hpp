// SPDX-License-Identifier: MIT
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsynth/errors.hpp"

namespace qsynth {

/// Gate alphabet. Every member is self-inverse, so reversing a gate sequence
/// inverts it exactly. CCCX is a first-class primitive; expansion into smaller
/// gates is deferred to program emission.
enum class GateKind : std::uint8_t { X, H, Z, CX, CCX, CCCX };

std::size_t control_count(GateKind kind);
const char* gate_name(GateKind kind);

enum class Role : std::uint8_t { Data, Ancilla, Flag };

/// Register id reserved for the shared ancilla pool before it is materialized
/// by Circuit::plot_ancilla().
inline constexpr std::uint32_t kAncillaReg = 0xffffffffu;

/// One wire: a register id plus a bit index within it. Index 0 is the least
/// significant bit of the register.
struct QubitRef {
    std::uint32_t reg = 0;
    std::uint32_t index = 0;

    friend auto operator<=>(const QubitRef&, const QubitRef&) = default;
};

/// A primitive gate. Controls are ordered but control order never changes
/// semantics. Targets hold exactly one qubit except for the uncontrolled
/// multi-target X fan, which X-flips each listed target.
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<QubitRef> controls;
    std::vector<QubitRef> targets;

    static Gate x(QubitRef target);
    static Gate multi_x(std::vector<QubitRef> targets);
    static Gate h(QubitRef target);
    static Gate z(QubitRef target);
    static Gate cx(QubitRef control, QubitRef target);
    static Gate ccx(QubitRef c0, QubitRef c1, QubitRef target);
    static Gate cccx(QubitRef c0, QubitRef c1, QubitRef c2, QubitRef target);

    /// All qubits the gate touches, controls first.
    std::vector<QubitRef> qubits() const;

    friend bool operator==(const Gate&, const Gate&) = default;

private:
    static Gate make(GateKind kind, std::vector<QubitRef> controls, std::vector<QubitRef> targets);
};

struct RegisterInfo {
    std::string name;
    std::uint32_t width = 0;
    Role role = Role::Data;
};

/// Value handle to a declared register. Registers are immutable once added,
/// so the cached width and role never go stale.
struct RegisterHandle {
    std::uint32_t id = 0;
    std::uint32_t width = 0;
    Role role = Role::Data;

    QubitRef operator[](std::uint32_t index) const;
    /// All bits, least significant first.
    std::vector<QubitRef> qubits() const;
};

/// Shared scratch-qubit pool. Slots are identified by index into the ancilla
/// register that plot_ancilla() materializes; the register's final width is
/// the pool's high-water mark.
class AncillaPool {
public:
    /// Grabs n slots, lowest free indices first.
    std::vector<QubitRef> acquire(std::uint32_t n);
    void release(std::span<const QubitRef> refs);

    std::uint32_t live() const { return live_; }
    std::uint32_t watermark() const { return static_cast<std::uint32_t>(slots_.size()); }

private:
    friend class Circuit;
    std::vector<bool> slots_; // true while acquired
    std::uint32_t live_ = 0;
    bool frozen_ = false;
};

struct Annotation {
    std::size_t gate_index = 0; // position of the first gate the note covers
    std::string text;
};

/// Append-only gate list over named registers. A circuit becomes immutable
/// once plot_ancilla() finalizes it; simulation and emission require a
/// finalized circuit whenever pool slots were used.
class Circuit {
public:
    RegisterHandle add_register(const std::string& name, std::uint32_t width, Role role = Role::Data);

    void append(Gate gate);
    /// Attaches a debugging note to the next appended gate. Notes carry no
    /// semantics.
    void annotate(std::string text);

    AncillaPool& pool() { return pool_; }
    const AncillaPool& pool() const { return pool_; }

    /// Materializes the ancilla register (width = pool watermark, declared
    /// last) and freezes the circuit. No-op register-wise if no slot was ever
    /// acquired. All acquired slots must have been released.
    void plot_ancilla();
    bool finalized() const { return finalized_; }

    std::size_t num_registers() const { return registers_.size(); }
    const RegisterInfo& register_info(std::uint32_t id) const;
    RegisterHandle handle(std::uint32_t id) const;
    std::optional<std::uint32_t> find_register(const std::string& name) const;
    std::optional<std::uint32_t> ancilla_register() const { return ancilla_reg_; }

    std::span<const Gate> gates() const { return gates_; }
    std::span<const Annotation> annotations() const { return annotations_; }

    /// Total wires including the materialized ancilla register.
    std::size_t total_qubits() const;
    /// Global wire position: registers in declaration order, bit 0 first.
    /// Ancilla refs resolve only after plot_ancilla().
    std::size_t qubit_position(QubitRef ref) const;

    /// Marks registers whose bits the program measures, in declaration order.
    void set_measured(const std::vector<RegisterHandle>& regs);
    std::span<const std::uint32_t> measured() const { return measured_; }
    /// Global positions of all measured bits, ascending.
    std::vector<std::size_t> measured_positions() const;

    /// Throws unless every recorded gate can be resolved to a global position
    /// (i.e. pool usage has been finalized).
    void require_resolved() const;

private:
    friend Circuit parse(const std::string& text);

    /// Register creation minus the identifier-shape and reserved-name checks;
    /// the parser admits names our own emitter produced (e.g. the decompose
    /// helper register).
    RegisterHandle add_register_raw(const std::string& name, std::uint32_t width, Role role);

    void require_mutable() const;
    void validate(const Gate& gate) const;
    void validate_ref(QubitRef ref) const;

    std::vector<RegisterInfo> registers_;
    std::vector<std::size_t> reg_base_; // global position of bit 0 per register
    std::vector<Gate> gates_;
    std::vector<Annotation> annotations_;
    std::vector<std::uint32_t> measured_;
    AncillaPool pool_;
    std::optional<std::uint32_t> ancilla_reg_;
    bool finalized_ = false;
};

/// Exact inverse of a gate sequence: same gates in reverse order.
std::vector<Gate> reversed(std::span<const Gate> gates);

/// Decomposes a controlled X with several targets into one controlled X per
/// target, sharing the control set. Zero controls yield plain X gates; up to
/// three controls are supported.
std::vector<Gate> multi_target_gate(std::span<const QubitRef> controls,
                                    std::span<const QubitRef> targets);

} // namespace qsynth
