// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsynth {

/// Outcome of one exhaustive check suite. A suite compares synthesized
/// circuits against plain integer arithmetic, case by case.
struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes; // first few failure descriptions

    bool ok() const { return failures == 0; }
};

/// dst += src over every input pair for each width in [min_width, max_width].
SuiteResult verify_adder(std::uint32_t min_width, std::uint32_t max_width);

/// result = a * b over every input pair for each width pair in
/// [1, max_width] x [1, max_width].
SuiteResult verify_multiplier(std::uint32_t max_width);

/// Equality flag over every input pair for each equal width in [1, max_width].
SuiteResult verify_comparator(std::uint32_t max_width);

/// Full truth table per control count in [min_controls, max_controls], plus
/// the scratch-count formula.
SuiteResult verify_mct(std::size_t min_controls, std::size_t max_controls);

/// The default battery: adder 1-4, multiplier and comparator up to 3, fans
/// with 3-8 controls.
std::vector<SuiteResult> verify_all();

} // namespace qsynth
