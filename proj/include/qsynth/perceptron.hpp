// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/grover.hpp"

namespace qsynth {

/// A training instance: find weight triples (w1, w2, w3) with
/// (i1*w1 + i2*w2) * w3 == ac, each weight an unsigned weight_bits-bit value.
struct PerceptronSpec {
    std::uint64_t i1_value = 1;
    std::uint64_t i2_value = 1;
    std::uint64_t ac_value = 0;
    std::uint32_t weight_bits = 2;
    std::uint32_t ac_bits = 3;
};

struct WeightAssignment {
    std::uint64_t w1 = 0;
    std::uint64_t w2 = 0;
    std::uint64_t w3 = 0;

    friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

/// All satisfying weight triples, ascending by (w1, w2, w3). Classical
/// brute force; the reference the quantum search is checked against.
std::vector<WeightAssignment> enumerate_solutions(const PerceptronSpec& spec);

/// The assembled search plus a probe twin used to inspect the predicate.
/// `circuit` runs the full amplification and measures the weight registers;
/// `oracle_probe` loads the constants and evaluates the predicate once, so a
/// basis-state sweep can read the flag directly. Register ids are identical
/// across the two circuits.
struct TrainingCircuit {
    PerceptronSpec spec;
    Circuit circuit;
    Circuit oracle_probe;
    RegisterHandle w1, w2, w3;
    RegisterHandle flag;
    std::uint64_t num_solutions = 0;
    std::size_t iterations = 0;
};

TrainingCircuit build_training_circuit(
    const PerceptronSpec& spec, std::optional<std::size_t> iterations_override = std::nullopt);

/// Decodes a measured bitstring (as produced by the histogram: w3, then w2,
/// then w1, each most-significant-bit first) into a weight triple.
WeightAssignment split_measured(const TrainingCircuit& training, const std::string& bits);

/// Inverse of split_measured.
std::string weight_bitstring(const TrainingCircuit& training, const WeightAssignment& weights);

/// Sweeps every weight triple through the probe circuit and returns the
/// bitstrings whose flag comes out 1, sorted. Guarded against wide sweeps.
std::vector<std::string> oracle_marked_strings(const TrainingCircuit& training);

} // namespace qsynth
