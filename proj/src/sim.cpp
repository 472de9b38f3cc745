// SPDX-License-Identifier: MIT
#include "qsynth/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace qsynth {

namespace {

constexpr double kNormTolerance = 1e-9;

std::string render_outcome(std::uint64_t index, std::size_t width) {
    std::string text(width, '0');
    for (std::size_t q = 0; q < width; ++q) {
        if ((index >> q) & 1u) {
            text[width - 1 - q] = '1';
        }
    }
    return text;
}

} // namespace

bool BasisState::get(std::size_t q) const {
    if (q >= bits_.size()) {
        throw Error(ErrorCode::Range, "basis-state wire " + std::to_string(q) + " out of range");
    }
    return bits_[q];
}

void BasisState::set(std::size_t q, bool value) {
    if (q >= bits_.size()) {
        throw Error(ErrorCode::Range, "basis-state wire " + std::to_string(q) + " out of range");
    }
    bits_[q] = value;
}

void BasisState::set_register(const Circuit& circuit, RegisterHandle reg, std::uint64_t value) {
    if (reg.width < 64 && value >= (std::uint64_t{1} << reg.width)) {
        throw Error(ErrorCode::Range, "value does not fit register width");
    }
    for (std::uint32_t i = 0; i < reg.width; ++i) {
        set(circuit.qubit_position(QubitRef{reg.id, i}), ((value >> i) & 1u) != 0);
    }
}

std::uint64_t BasisState::read_register(const Circuit& circuit, RegisterHandle reg) const {
    std::uint64_t value = 0;
    for (std::uint32_t i = 0; i < reg.width; ++i) {
        if (get(circuit.qubit_position(QubitRef{reg.id, i}))) {
            value |= std::uint64_t{1} << i;
        }
    }
    return value;
}

std::string BasisState::to_string() const {
    std::string text(bits_.size(), '0');
    for (std::size_t q = 0; q < bits_.size(); ++q) {
        if (bits_[q]) {
            text[bits_.size() - 1 - q] = '1';
        }
    }
    return text;
}

void apply_basis(const Circuit& circuit, BasisState& state) {
    circuit.require_resolved();
    if (state.size() != circuit.total_qubits()) {
        throw Error(ErrorCode::WidthMismatch, "basis state width " + std::to_string(state.size()) +
                                                  " does not match circuit width " +
                                                  std::to_string(circuit.total_qubits()));
    }
    std::span<const Gate> gates = circuit.gates();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        const Gate& gate = gates[gi];
        if (gate.kind == GateKind::H || gate.kind == GateKind::Z) {
            throw Error(ErrorCode::NonPermutationGate,
                        std::string("gate ") + std::to_string(gi) + " (" + gate_name(gate.kind) +
                            ") is not a permutation gate");
        }
        bool fire = true;
        for (QubitRef c : gate.controls) {
            fire = fire && state.get(circuit.qubit_position(c));
        }
        if (fire) {
            for (QubitRef t : gate.targets) {
                const std::size_t pos = circuit.qubit_position(t);
                state.set(pos, !state.get(pos));
            }
        }
    }
}

StateVector::StateVector(std::size_t n, std::size_t cap) : num_qubits_(n) {
    if (n > cap) {
        throw Error(ErrorCode::Capacity, "state of " + std::to_string(n) +
                                             " qubits exceeds dense cap of " + std::to_string(cap));
    }
    amps_.assign(std::size_t{1} << n, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const std::complex<double>& a : amps_) {
        total += std::norm(a);
    }
    return total;
}

namespace {

void apply_gate_dense(const Circuit& circuit, const Gate& gate,
                      std::vector<std::complex<double>>& amps, std::size_t n) {
    std::uint64_t control_mask = 0;
    for (QubitRef c : gate.controls) {
        control_mask |= std::uint64_t{1} << circuit.qubit_position(c);
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    switch (gate.kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
    case GateKind::CCCX: {
        // Multi-target fans only occur for plain X; flipping targets one at a
        // time is the tensor product of the per-target flips.
        for (QubitRef t : gate.targets) {
            const std::uint64_t bit = std::uint64_t{1} << circuit.qubit_position(t);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if ((i & bit) == 0 && (i & control_mask) == control_mask) {
                    std::swap(amps[i], amps[i | bit]);
                }
            }
        }
        break;
    }
    case GateKind::H: {
        const std::uint64_t bit = std::uint64_t{1} << circuit.qubit_position(gate.targets.front());
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & bit) == 0) {
                const std::complex<double> lo = amps[i];
                const std::complex<double> hi = amps[i | bit];
                amps[i] = inv_sqrt2 * (lo + hi);
                amps[i | bit] = inv_sqrt2 * (lo - hi);
            }
        }
        break;
    }
    case GateKind::Z: {
        const std::uint64_t bit = std::uint64_t{1} << circuit.qubit_position(gate.targets.front());
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & bit) != 0) {
                amps[i] = -amps[i];
            }
        }
        break;
    }
    }
}

} // namespace

void apply_full(const Circuit& circuit, StateVector& state) {
    circuit.require_resolved();
    if (state.num_qubits() != circuit.total_qubits()) {
        throw Error(ErrorCode::WidthMismatch,
                    "state width " + std::to_string(state.num_qubits()) +
                        " does not match circuit width " + std::to_string(circuit.total_qubits()));
    }
    std::vector<std::complex<double>> scratch(state.amplitudes().begin(), state.amplitudes().end());
    std::span<const Gate> gates = circuit.gates();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        apply_gate_dense(circuit, gates[gi], scratch, state.num_qubits());
        double norm = 0.0;
        for (const std::complex<double>& a : scratch) {
            norm += std::norm(a);
        }
        if (std::abs(norm - 1.0) > kNormTolerance) {
            throw Error(ErrorCode::Range, "norm drifted to " + std::to_string(norm) +
                                              " after gate " + std::to_string(gi));
        }
    }
    std::copy(scratch.begin(), scratch.end(), state.amplitudes().begin());
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    UnitaryMatrix m;
    m.dim = dim;
    m.entries.assign(dim * dim, {0.0, 0.0});
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = {1.0, 0.0};
    }
    return m;
}

UnitaryMatrix unitary_of(const Circuit& circuit) {
    circuit.require_resolved();
    const std::size_t n = circuit.total_qubits();
    if (n > kUnitaryCap) {
        throw Error(ErrorCode::Capacity, "unitary extraction capped at " +
                                             std::to_string(kUnitaryCap) + " qubits, circuit has " +
                                             std::to_string(n));
    }
    const std::size_t dim = std::size_t{1} << n;
    UnitaryMatrix matrix;
    matrix.dim = dim;
    matrix.entries.assign(dim * dim, {0.0, 0.0});
    for (std::size_t col = 0; col < dim; ++col) {
        StateVector state(n, kUnitaryCap);
        std::fill(state.amplitudes().begin(), state.amplitudes().end(), std::complex<double>{});
        state.amplitudes()[col] = {1.0, 0.0};
        apply_full(circuit, state);
        for (std::size_t row = 0; row < dim; ++row) {
            matrix.at(row, col) = state.amplitudes()[row];
        }
    }
    return matrix;
}

std::string Histogram::serialize() const {
    std::vector<std::pair<std::string, std::uint64_t>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    std::ostringstream out;
    for (const auto& [bits, count] : rows) {
        out << bits << " " << count << "\n";
    }
    return out.str();
}

namespace {

Histogram sample(const StateVector& state, std::span<const std::size_t> keep,
                 std::uint64_t shots, std::uint64_t seed) {
    for (std::size_t q : keep) {
        if (q >= state.num_qubits()) {
            throw Error(ErrorCode::Range, "measured wire " + std::to_string(q) + " out of range");
        }
    }
    std::span<const std::complex<double>> amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double running = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        running += std::norm(amps[i]);
        cdf[i] = running;
    }
    const double total = cdf.back();

    std::mt19937_64 rng(seed);
    Histogram histogram;
    histogram.shots = shots;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto index =
            static_cast<std::uint64_t>(std::distance(cdf.begin(), it == cdf.end() ? it - 1 : it));
        std::uint64_t projected = 0;
        for (std::size_t k = 0; k < keep.size(); ++k) {
            projected |= ((index >> keep[k]) & 1u) << k;
        }
        ++histogram.counts[render_outcome(projected, keep.size())];
    }
    return histogram;
}

} // namespace

Histogram measure_all(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
    std::vector<std::size_t> all(state.num_qubits());
    std::iota(all.begin(), all.end(), 0);
    return sample(state, all, shots, seed);
}

Histogram measure_qubits(const StateVector& state, std::span<const std::size_t> qubits,
                         std::uint64_t shots, std::uint64_t seed) {
    for (std::size_t i = 1; i < qubits.size(); ++i) {
        if (qubits[i] <= qubits[i - 1]) {
            throw Error(ErrorCode::Range, "measured wires must be ascending");
        }
    }
    return sample(state, qubits, shots, seed);
}

} // namespace qsynth
