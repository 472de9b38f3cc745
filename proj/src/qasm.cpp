// SPDX-License-Identifier: MIT
#include "qsynth/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <vector>

namespace qsynth {

namespace {

constexpr std::string_view kHelperName = "c3x_anc";

std::string ref_text(const Circuit& circuit, QubitRef ref) {
    if (ref.reg == kAncillaReg) {
        const RegisterInfo& info = circuit.register_info(*circuit.ancilla_register());
        return info.name + "[" + std::to_string(ref.index) + "]";
    }
    const RegisterInfo& info = circuit.register_info(ref.reg);
    return info.name + "[" + std::to_string(ref.index) + "]";
}

void emit_line(std::string& out, std::string_view mnemonic,
               std::initializer_list<std::string> operands) {
    out += mnemonic;
    out += ' ';
    bool first = true;
    for (const std::string& op : operands) {
        if (!first) {
            out += ", ";
        }
        first = false;
        out += op;
    }
    out += ";\n";
}

} // namespace

std::string emit(const Circuit& circuit, const EmitOptions& options) {
    circuit.require_resolved();
    const std::span<const Gate> gates = circuit.gates();
    const bool has_cccx = std::any_of(gates.begin(), gates.end(), [](const Gate& g) {
        return g.kind == GateKind::CCCX;
    });
    const bool helper = options.cccx == CccxMode::DecomposeCcx && has_cccx;
    if (helper && circuit.find_register(std::string(kHelperName))) {
        throw Error(ErrorCode::NameCollision,
                    "decompose mode reserves the register name 'c3x_anc', but the circuit "
                    "declares it");
    }

    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    for (std::uint32_t id = 0; id < circuit.num_registers(); ++id) {
        const RegisterInfo& info = circuit.register_info(id);
        out += "qreg " + info.name + "[" + std::to_string(info.width) + "];\n";
    }
    if (helper) {
        out += "qreg c3x_anc[1];\n";
    }
    std::size_t measured_bits = 0;
    for (std::uint32_t id : circuit.measured()) {
        measured_bits += circuit.register_info(id).width;
    }
    if (measured_bits > 0) {
        out += "creg meas[" + std::to_string(measured_bits) + "];\n";
    }

    const std::string helper_ref = "c3x_anc[0]";
    const std::span<const Annotation> notes = circuit.annotations();
    std::size_t note_at = 0;
    for (std::size_t gi = 0; gi <= gates.size(); ++gi) {
        if (options.include_comments) {
            while (note_at < notes.size() && notes[note_at].gate_index == gi) {
                out += "// block: " + notes[note_at].text + "\n";
                ++note_at;
            }
        }
        if (gi == gates.size()) {
            break;
        }
        const Gate& gate = gates[gi];
        switch (gate.kind) {
        case GateKind::X:
            for (QubitRef target : gate.targets) {
                emit_line(out, "x", {ref_text(circuit, target)});
            }
            break;
        case GateKind::H: emit_line(out, "h", {ref_text(circuit, gate.targets[0])}); break;
        case GateKind::Z: emit_line(out, "z", {ref_text(circuit, gate.targets[0])}); break;
        case GateKind::CX:
            emit_line(out, "cx",
                      {ref_text(circuit, gate.controls[0]), ref_text(circuit, gate.targets[0])});
            break;
        case GateKind::CCX:
            emit_line(out, "ccx",
                      {ref_text(circuit, gate.controls[0]), ref_text(circuit, gate.controls[1]),
                       ref_text(circuit, gate.targets[0])});
            break;
        case GateKind::CCCX: {
            const std::string c0 = ref_text(circuit, gate.controls[0]);
            const std::string c1 = ref_text(circuit, gate.controls[1]);
            const std::string c2 = ref_text(circuit, gate.controls[2]);
            const std::string t = ref_text(circuit, gate.targets[0]);
            if (!helper) {
                emit_line(out, "c3x", {c0, c1, c2, t});
            } else {
                // Exact while the helper stays 0: the first Toffoli writes
                // c0&c1, the middle one applies it with c2, the last clears.
                emit_line(out, "ccx", {c0, c1, helper_ref});
                emit_line(out, "ccx", {helper_ref, c2, t});
                emit_line(out, "ccx", {c0, c1, helper_ref});
            }
            break;
        }
        }
    }

    std::size_t meas_index = 0;
    for (std::uint32_t id : circuit.measured()) {
        const RegisterInfo& info = circuit.register_info(id);
        for (std::uint32_t i = 0; i < info.width; ++i) {
            out += "measure " + info.name + "[" + std::to_string(i) + "] -> meas[" +
                   std::to_string(meas_index) + "];\n";
            ++meas_index;
        }
    }
    return out;
}

namespace {

// Character cursor with 1-based line/column tracking.
class Cursor {
public:
    explicit Cursor(const std::string& text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[pos_]; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

    void advance() {
        if (eof()) {
            return;
        }
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        for (;;) {
            while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) {
                advance();
            }
            if (!eof() && peek() == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (!eof() && peek() != '\n') {
                    advance();
                }
                continue;
            }
            return;
        }
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, column_, message);
    }

    [[noreturn]] void fail_at(std::size_t line, std::size_t column,
                              const std::string& message) const {
        throw ParseError(line, column, message);
    }

    std::string read_identifier() {
        skip_blank();
        if (eof() || (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')) {
            fail("expected an identifier");
        }
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            out.push_back(peek());
            advance();
        }
        return out;
    }

    std::uint32_t read_number() {
        skip_blank();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) {
            fail("expected a number");
        }
        std::uint64_t value = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
            if (value > 0xffffffffull) {
                fail("number too large");
            }
            advance();
        }
        return static_cast<std::uint32_t>(value);
    }

    void expect(char c, const std::string& what) {
        skip_blank();
        if (peek() != c) {
            fail("expected '" + std::string(1, c) + "' " + what);
        }
        advance();
    }

    bool try_consume(char c) {
        skip_blank();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct Operand {
    std::string name;
    std::uint32_t index = 0;
    std::size_t line = 0;
    std::size_t column = 0;
};

Operand read_operand(Cursor& cur) {
    cur.skip_blank();
    Operand op;
    op.line = cur.line();
    op.column = cur.column();
    op.name = cur.read_identifier();
    cur.expect('[', "before the qubit index");
    op.index = cur.read_number();
    cur.expect(']', "after the qubit index");
    return op;
}

} // namespace

Circuit parse(const std::string& text) {
    Cursor cur(text);

    // Header: version statement, then the standard include.
    cur.skip_blank();
    if (cur.read_identifier() != "OPENQASM") {
        cur.fail("expected 'OPENQASM 2.0;'");
    }
    cur.skip_blank();
    std::string version;
    while (!cur.eof() && (std::isdigit(static_cast<unsigned char>(cur.peek())) || cur.peek() == '.')) {
        version.push_back(cur.peek());
        cur.advance();
    }
    if (version != "2.0") {
        cur.fail("unsupported version '" + version + "'");
    }
    cur.expect(';', "after the version");
    cur.skip_blank();
    if (cur.read_identifier() != "include") {
        cur.fail("expected 'include \"qelib1.inc\";'");
    }
    cur.expect('"', "around the include path");
    std::string path;
    while (!cur.eof() && cur.peek() != '"' && cur.peek() != '\n') {
        path.push_back(cur.peek());
        cur.advance();
    }
    if (path != "qelib1.inc") {
        cur.fail("only the include \"qelib1.inc\" is supported");
    }
    cur.expect('"', "around the include path");
    cur.expect(';', "after the include");

    Circuit circuit;
    std::map<std::string, RegisterHandle> qregs;
    std::string creg_name;
    std::uint32_t creg_width = 0;

    // Measurement bookkeeping: bits arrive register by register, each covered
    // fully in ascending order, classical indices consecutive from zero.
    std::vector<std::uint32_t> measured_order;
    std::set<std::string> measured_done;
    std::string open_reg;
    std::uint32_t open_next = 0;
    std::size_t meas_count = 0;
    bool measuring = false;

    auto resolve = [&](const Operand& op) -> QubitRef {
        auto it = qregs.find(op.name);
        if (it == qregs.end()) {
            if (op.name == creg_name) {
                cur.fail_at(op.line, op.column,
                            "cannot apply a gate to classical register '" + op.name + "'");
            }
            cur.fail_at(op.line, op.column, "unknown register '" + op.name + "'");
        }
        if (op.index >= it->second.width) {
            cur.fail_at(op.line, op.column, "index " + std::to_string(op.index) +
                                                " out of range for register '" + op.name + "' of width " +
                                                std::to_string(it->second.width));
        }
        return it->second[op.index];
    };

    for (;;) {
        cur.skip_blank();
        if (cur.eof()) {
            break;
        }
        const std::size_t stmt_line = cur.line();
        const std::size_t stmt_column = cur.column();
        const std::string word = cur.read_identifier();

        if (word == "qreg" || word == "creg") {
            if (measuring) {
                cur.fail_at(stmt_line, stmt_column, "declaration after measurements");
            }
            cur.skip_blank();
            const std::size_t name_line = cur.line();
            const std::size_t name_column = cur.column();
            const std::string name = cur.read_identifier();
            cur.expect('[', "before the register width");
            const std::uint32_t width = cur.read_number();
            cur.expect(']', "after the register width");
            cur.expect(';', "after the declaration");
            if (width == 0) {
                cur.fail_at(name_line, name_column, "register '" + name + "' has zero width");
            }
            if (qregs.count(name) || name == creg_name) {
                cur.fail_at(name_line, name_column, "register '" + name + "' already declared");
            }
            if (word == "creg") {
                if (name != "meas") {
                    cur.fail_at(name_line, name_column, "only a creg named 'meas' is supported");
                }
                if (!creg_name.empty()) {
                    cur.fail_at(name_line, name_column, "creg 'meas' already declared");
                }
                creg_name = name;
                creg_width = width;
            } else {
                qregs.emplace(name, circuit.add_register_raw(name, width, Role::Data));
            }
            continue;
        }

        if (word == "measure") {
            const Operand src = read_operand(cur);
            cur.skip_blank();
            if (!(cur.try_consume('-') && cur.try_consume('>'))) {
                cur.fail("expected '->' after the measured qubit");
            }
            const Operand dst = read_operand(cur);
            cur.expect(';', "after the measurement");
            const QubitRef qubit = resolve(src);
            (void)qubit;
            if (creg_name.empty()) {
                cur.fail_at(stmt_line, stmt_column, "measurement before any creg declaration");
            }
            if (dst.name != creg_name) {
                cur.fail_at(dst.line, dst.column, "unknown classical register '" + dst.name + "'");
            }
            if (dst.index != meas_count) {
                cur.fail_at(dst.line, dst.column, "classical indices must be consecutive: expected " +
                                                      std::to_string(meas_count));
            }
            if (dst.index >= creg_width) {
                cur.fail_at(dst.line, dst.column, "classical index " + std::to_string(dst.index) +
                                                      " out of range for creg of width " +
                                                      std::to_string(creg_width));
            }
            measuring = true;
            if (src.name != open_reg) {
                if (!open_reg.empty() && open_next != qregs.at(open_reg).width) {
                    cur.fail_at(src.line, src.column,
                                "register '" + open_reg + "' measured only partially");
                }
                if (measured_done.count(src.name)) {
                    cur.fail_at(src.line, src.column,
                                "register '" + src.name + "' measured twice");
                }
                if (src.index != 0) {
                    cur.fail_at(src.line, src.column,
                                "measurement of register '" + src.name + "' must start at bit 0");
                }
                if (!open_reg.empty()) {
                    measured_done.insert(open_reg);
                }
                open_reg = src.name;
                open_next = 0;
                measured_order.push_back(qregs.at(src.name).id);
            }
            if (src.index != open_next) {
                cur.fail_at(src.line, src.column, "measurement bits must ascend: expected bit " +
                                                      std::to_string(open_next));
            }
            ++open_next;
            ++meas_count;
            continue;
        }

        // Gate statements.
        std::size_t arity = 0;
        if (word == "x" || word == "h" || word == "z") {
            arity = 1;
        } else if (word == "cx") {
            arity = 2;
        } else if (word == "ccx") {
            arity = 3;
        } else if (word == "c3x") {
            arity = 4;
        } else {
            cur.fail_at(stmt_line, stmt_column, "unknown statement '" + word + "'");
        }
        if (measuring) {
            cur.fail_at(stmt_line, stmt_column, "gate after measurements");
        }
        std::vector<Operand> ops;
        ops.push_back(read_operand(cur));
        while (cur.try_consume(',')) {
            ops.push_back(read_operand(cur));
        }
        cur.expect(';', "after the gate");
        if (ops.size() != arity) {
            cur.fail_at(stmt_line, stmt_column, "gate '" + word + "' expects " +
                                                    std::to_string(arity) + " operand(s), got " +
                                                    std::to_string(ops.size()));
        }
        std::vector<QubitRef> refs;
        refs.reserve(ops.size());
        for (const Operand& op : ops) {
            refs.push_back(resolve(op));
        }
        for (std::size_t i = 0; i < refs.size(); ++i) {
            for (std::size_t j = i + 1; j < refs.size(); ++j) {
                if (refs[i] == refs[j]) {
                    cur.fail_at(ops[j].line, ops[j].column, "duplicate qubit operand");
                }
            }
        }
        if (word == "x") {
            circuit.append(Gate::x(refs[0]));
        } else if (word == "h") {
            circuit.append(Gate::h(refs[0]));
        } else if (word == "z") {
            circuit.append(Gate::z(refs[0]));
        } else if (word == "cx") {
            circuit.append(Gate::cx(refs[0], refs[1]));
        } else if (word == "ccx") {
            circuit.append(Gate::ccx(refs[0], refs[1], refs[2]));
        } else {
            circuit.append(Gate::cccx(refs[0], refs[1], refs[2], refs[3]));
        }
    }

    if (measuring) {
        if (open_next != qregs.at(open_reg).width) {
            cur.fail("register '" + open_reg + "' measured only partially");
        }
        if (meas_count != creg_width) {
            cur.fail("creg of width " + std::to_string(creg_width) + " but " +
                     std::to_string(meas_count) + " bits measured");
        }
        std::vector<RegisterHandle> handles;
        handles.reserve(measured_order.size());
        for (std::uint32_t id : measured_order) {
            handles.push_back(circuit.handle(id));
        }
        circuit.set_measured(handles);
    } else if (!creg_name.empty()) {
        cur.fail("creg 'meas' declared but nothing measured");
    }
    return circuit;
}

} // namespace qsynth
