// SPDX-License-Identifier: MIT
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsynth/circuit.hpp"

namespace qsynth {

/// Default width cap for dense state-vector simulation. 20 qubits keep the
/// amplitude array at 16 MiB.
inline constexpr std::size_t kDefaultDenseCap = 20;

/// Hard cap for full unitary extraction.
inline constexpr std::size_t kUnitaryCap = 12;

/// Computational basis state over n wires, bit q = wire at global position q.
class BasisState {
public:
    BasisState() = default;
    explicit BasisState(std::size_t n) : bits_(n, false) {}

    std::size_t size() const { return bits_.size(); }
    bool get(std::size_t q) const;
    void set(std::size_t q, bool value);

    /// Loads value into a register, bit 0 = least significant.
    void set_register(const Circuit& circuit, RegisterHandle reg, std::uint64_t value);
    std::uint64_t read_register(const Circuit& circuit, RegisterHandle reg) const;

    /// Highest wire leftmost, so later-declared registers print on the left
    /// and each register prints most-significant-bit first.
    std::string to_string() const;

private:
    std::vector<bool> bits_;
};

/// Runs a permutation circuit (X, CX, CCX, CCCX, multi-target X) on a basis
/// state in time linear in the gate count. H or Z raise a
/// non-permutation-gate error naming the offending gate index.
void apply_basis(const Circuit& circuit, BasisState& state);

/// Dense amplitude vector over n wires; basis index bit q = wire q.
class StateVector {
public:
    explicit StateVector(std::size_t n, std::size_t cap = kDefaultDenseCap);

    std::size_t num_qubits() const { return num_qubits_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::span<std::complex<double>> amplitudes() { return amps_; }

    double norm_squared() const;

private:
    std::size_t num_qubits_ = 0;
    std::vector<std::complex<double>> amps_;
};

/// Applies every gate to the state in place, one linear pass over the
/// amplitudes per gate. The norm is re-checked after each gate and a drift
/// beyond 1e-9 aborts with a range error.
void apply_full(const Circuit& circuit, StateVector& state);

/// Dense row-major unitary, dim = 2^n.
struct UnitaryMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> entries;

    std::complex<double>& at(std::size_t row, std::size_t col) { return entries[row * dim + col]; }
    const std::complex<double>& at(std::size_t row, std::size_t col) const {
        return entries[row * dim + col];
    }

    static UnitaryMatrix identity(std::size_t dim);
};

/// Builds the circuit's full unitary column by column. Capped at 12 wires.
UnitaryMatrix unitary_of(const Circuit& circuit);

/// Measurement outcome counts keyed by rendered bitstring.
struct Histogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    /// One "<bitstring> <count>" line per outcome, sorted by descending count
    /// and then lexicographically ascending bitstring.
    std::string serialize() const;
};

/// Samples computational-basis outcomes over all wires. Sampling is
/// deterministic for a fixed (state, shots, seed): draws come from
/// std::mt19937_64 seeded with seed, mapped to [0,1) via (x >> 11) * 2^-53,
/// and resolved against the cumulative distribution by binary search.
Histogram measure_all(const StateVector& state, std::uint64_t shots, std::uint64_t seed);

/// Same sampler, but each outcome string keeps only the given wires
/// (ascending positions; highest position leftmost in the rendered string).
Histogram measure_qubits(const StateVector& state, std::span<const std::size_t> qubits,
                         std::uint64_t shots, std::uint64_t seed);

} // namespace qsynth
