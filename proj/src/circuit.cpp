// SPDX-License-Identifier: MIT
#include "qsynth/circuit.hpp"

#include <algorithm>
#include <cctype>

namespace qsynth {

namespace {

bool valid_identifier(const std::string& name) {
    if (name.empty() || !std::islower(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_';
    });
}

// Identifiers the emitter claims for itself.
bool reserved_identifier(const std::string& name) {
    return name == "meas" || name == "c3x_anc";
}

std::string ref_text(QubitRef ref) {
    std::string reg = ref.reg == kAncillaReg ? std::string("pool") : std::to_string(ref.reg);
    return "(" + reg + "," + std::to_string(ref.index) + ")";
}

} // namespace

std::size_t control_count(GateKind kind) {
    switch (kind) {
    case GateKind::X:
    case GateKind::H:
    case GateKind::Z:
        return 0;
    case GateKind::CX:
        return 1;
    case GateKind::CCX:
        return 2;
    case GateKind::CCCX:
        return 3;
    }
    return 0;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::Z: return "z";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
    case GateKind::CCCX: return "cccx";
    }
    return "?";
}

Gate Gate::make(GateKind kind, std::vector<QubitRef> controls, std::vector<QubitRef> targets) {
    Gate gate;
    gate.kind = kind;
    gate.controls = std::move(controls);
    gate.targets = std::move(targets);
    if (gate.controls.size() != control_count(kind)) {
        throw Error(ErrorCode::Range, std::string(gate_name(kind)) + ": wrong control count");
    }
    if (gate.targets.empty()) {
        throw Error(ErrorCode::Range, std::string(gate_name(kind)) + ": missing target");
    }
    if (gate.targets.size() > 1 && kind != GateKind::X) {
        throw Error(ErrorCode::Range, std::string(gate_name(kind)) + ": multiple targets only valid for x");
    }
    std::vector<QubitRef> all = gate.qubits();
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw Error(ErrorCode::Overlap, std::string(gate_name(kind)) + ": duplicate qubit operand");
    }
    return gate;
}

Gate Gate::x(QubitRef target) { return make(GateKind::X, {}, {target}); }
Gate Gate::multi_x(std::vector<QubitRef> targets) { return make(GateKind::X, {}, std::move(targets)); }
Gate Gate::h(QubitRef target) { return make(GateKind::H, {}, {target}); }
Gate Gate::z(QubitRef target) { return make(GateKind::Z, {}, {target}); }
Gate Gate::cx(QubitRef control, QubitRef target) { return make(GateKind::CX, {control}, {target}); }
Gate Gate::ccx(QubitRef c0, QubitRef c1, QubitRef target) {
    return make(GateKind::CCX, {c0, c1}, {target});
}
Gate Gate::cccx(QubitRef c0, QubitRef c1, QubitRef c2, QubitRef target) {
    return make(GateKind::CCCX, {c0, c1, c2}, {target});
}

std::vector<QubitRef> Gate::qubits() const {
    std::vector<QubitRef> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    return all;
}

QubitRef RegisterHandle::operator[](std::uint32_t index) const {
    if (index >= width) {
        throw Error(ErrorCode::Range, "register bit index " + std::to_string(index) +
                                          " out of range (width " + std::to_string(width) + ")");
    }
    return QubitRef{id, index};
}

std::vector<QubitRef> RegisterHandle::qubits() const {
    std::vector<QubitRef> refs;
    refs.reserve(width);
    for (std::uint32_t i = 0; i < width; ++i) {
        refs.push_back(QubitRef{id, i});
    }
    return refs;
}

std::vector<QubitRef> AncillaPool::acquire(std::uint32_t n) {
    if (frozen_) {
        throw Error(ErrorCode::Finalized, "ancilla pool is finalized");
    }
    std::vector<QubitRef> refs;
    refs.reserve(n);
    for (std::uint32_t got = 0; got < n; ++got) {
        std::size_t slot = 0;
        while (slot < slots_.size() && slots_[slot]) {
            ++slot;
        }
        if (slot == slots_.size()) {
            slots_.push_back(false);
        }
        slots_[slot] = true;
        ++live_;
        refs.push_back(QubitRef{kAncillaReg, static_cast<std::uint32_t>(slot)});
    }
    return refs;
}

void AncillaPool::release(std::span<const QubitRef> refs) {
    for (QubitRef ref : refs) {
        if (ref.reg != kAncillaReg || ref.index >= slots_.size()) {
            throw Error(ErrorCode::DanglingReference, "release of non-pool qubit " + ref_text(ref));
        }
        if (!slots_[ref.index]) {
            throw Error(ErrorCode::DoubleRelease,
                        "pool slot " + std::to_string(ref.index) + " released twice");
        }
        slots_[ref.index] = false;
        --live_;
    }
}

RegisterHandle Circuit::add_register(const std::string& name, std::uint32_t width, Role role) {
    require_mutable();
    if (width == 0) {
        throw Error(ErrorCode::InvalidWidth, "register '" + name + "' must have width >= 1");
    }
    if (!valid_identifier(name)) {
        throw Error(ErrorCode::NameCollision, "register name '" + name + "' is not a valid identifier");
    }
    if (reserved_identifier(name)) {
        throw Error(ErrorCode::NameCollision, "register name '" + name + "' is reserved");
    }
    return add_register_raw(name, width, role);
}

RegisterHandle Circuit::add_register_raw(const std::string& name, std::uint32_t width, Role role) {
    require_mutable();
    if (width == 0) {
        throw Error(ErrorCode::InvalidWidth, "register '" + name + "' must have width >= 1");
    }
    if (find_register(name)) {
        throw Error(ErrorCode::NameCollision, "register name '" + name + "' already declared");
    }
    if (role == Role::Ancilla &&
        std::any_of(registers_.begin(), registers_.end(),
                    [](const RegisterInfo& r) { return r.role == Role::Ancilla; })) {
        throw Error(ErrorCode::NameCollision, "ancilla register already present");
    }
    const auto id = static_cast<std::uint32_t>(registers_.size());
    reg_base_.push_back(registers_.empty() ? 0 : reg_base_.back() + registers_.back().width);
    registers_.push_back(RegisterInfo{name, width, role});
    return RegisterHandle{id, width, role};
}

void Circuit::append(Gate gate) {
    require_mutable();
    validate(gate);
    gates_.push_back(std::move(gate));
}

void Circuit::annotate(std::string text) {
    require_mutable();
    annotations_.push_back(Annotation{gates_.size(), std::move(text)});
}

void Circuit::plot_ancilla() {
    require_mutable();
    if (pool_.live() != 0) {
        throw Error(ErrorCode::UnbalancedAncilla,
                    std::to_string(pool_.live()) + " pool slot(s) still acquired");
    }
    if (pool_.watermark() > 0) {
        ancilla_reg_ = add_register("anc", pool_.watermark(), Role::Ancilla).id;
    }
    pool_.frozen_ = true;
    finalized_ = true;
}

const RegisterInfo& Circuit::register_info(std::uint32_t id) const {
    if (id >= registers_.size()) {
        throw Error(ErrorCode::DanglingReference, "register id " + std::to_string(id) + " not declared");
    }
    return registers_[id];
}

RegisterHandle Circuit::handle(std::uint32_t id) const {
    const RegisterInfo& info = register_info(id);
    return RegisterHandle{id, info.width, info.role};
}

std::optional<std::uint32_t> Circuit::find_register(const std::string& name) const {
    for (std::uint32_t id = 0; id < registers_.size(); ++id) {
        if (registers_[id].name == name) {
            return id;
        }
    }
    return std::nullopt;
}

std::size_t Circuit::total_qubits() const {
    std::size_t total = registers_.empty() ? 0 : reg_base_.back() + registers_.back().width;
    if (!finalized_ && pool_.watermark() > 0) {
        total += pool_.watermark();
    }
    return total;
}

std::size_t Circuit::qubit_position(QubitRef ref) const {
    if (ref.reg == kAncillaReg) {
        if (!ancilla_reg_) {
            throw Error(ErrorCode::UnbalancedAncilla,
                        "pool qubit " + ref_text(ref) + " unresolved; call plot_ancilla() first");
        }
        ref = QubitRef{*ancilla_reg_, ref.index};
    }
    const RegisterInfo& info = register_info(ref.reg);
    if (ref.index >= info.width) {
        throw Error(ErrorCode::Range, "qubit " + ref_text(ref) + " out of range for register '" +
                                          info.name + "'");
    }
    return reg_base_[ref.reg] + ref.index;
}

void Circuit::set_measured(const std::vector<RegisterHandle>& regs) {
    require_mutable();
    std::vector<std::uint32_t> ids;
    ids.reserve(regs.size());
    for (const RegisterHandle& reg : regs) {
        register_info(reg.id);
        ids.push_back(reg.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
        throw Error(ErrorCode::Overlap, "register measured twice");
    }
    measured_ = std::move(ids);
}

std::vector<std::size_t> Circuit::measured_positions() const {
    std::vector<std::size_t> positions;
    for (std::uint32_t id : measured_) {
        const RegisterInfo& info = register_info(id);
        for (std::uint32_t i = 0; i < info.width; ++i) {
            positions.push_back(reg_base_[id] + i);
        }
    }
    return positions;
}

void Circuit::require_resolved() const {
    if (pool_.watermark() > 0 && !ancilla_reg_) {
        throw Error(ErrorCode::UnbalancedAncilla,
                    "circuit uses pool qubits; call plot_ancilla() before simulating or emitting");
    }
}

void Circuit::require_mutable() const {
    if (finalized_) {
        throw Error(ErrorCode::Finalized, "circuit is finalized");
    }
}

void Circuit::validate(const Gate& gate) const {
    for (QubitRef ref : gate.qubits()) {
        validate_ref(ref);
    }
}

void Circuit::validate_ref(QubitRef ref) const {
    if (ref.reg == kAncillaReg) {
        if (ref.index >= pool_.watermark()) {
            throw Error(ErrorCode::DanglingReference,
                        "pool qubit " + ref_text(ref) + " was never acquired");
        }
        return;
    }
    const RegisterInfo& info = register_info(ref.reg);
    if (ref.index >= info.width) {
        throw Error(ErrorCode::Range, "qubit " + ref_text(ref) + " out of range for register '" +
                                          info.name + "'");
    }
}

std::vector<Gate> reversed(std::span<const Gate> gates) {
    return std::vector<Gate>(gates.rbegin(), gates.rend());
}

std::vector<Gate> multi_target_gate(std::span<const QubitRef> controls,
                                    std::span<const QubitRef> targets) {
    if (targets.empty()) {
        throw Error(ErrorCode::Range, "multi_target_gate: no targets");
    }
    if (controls.size() > 3) {
        throw Error(ErrorCode::Range, "multi_target_gate: at most 3 controls supported");
    }
    std::vector<Gate> gates;
    gates.reserve(targets.size());
    for (QubitRef target : targets) {
        switch (controls.size()) {
        case 0: gates.push_back(Gate::x(target)); break;
        case 1: gates.push_back(Gate::cx(controls[0], target)); break;
        case 2: gates.push_back(Gate::ccx(controls[0], controls[1], target)); break;
        case 3: gates.push_back(Gate::cccx(controls[0], controls[1], controls[2], target)); break;
        default: break;
        }
    }
    return gates;
}

} // namespace qsynth
