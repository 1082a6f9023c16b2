// Copyright 2026 The dualsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Recycling loop: run the dilated duality gate, post-select on the
 * auxiliary register, and on a Miss turn the leftover state back into an
 * input and try again.
 *
 * A unitary V that maps every Miss state back to its input exists only when
 * the Miss-branch operator M is proportional to a unitary (M^dagger M = cI);
 * exact_recovery() detects that case. Otherwise callers either re-prepare
 * the input (Reset) or supply their own V (Custom).
 */
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "dualsim/duality.hpp"

namespace dualsim {

namespace recovery {
struct ExactUnitary {
    Operator v;
};
struct Reset {
    StateVector input;
};
struct Custom {
    Operator v;
};
} // namespace recovery

using RecoveryStrategy =
    std::variant<recovery::ExactUnitary, recovery::Reset, recovery::Custom>;

/// No Hit within the cycle budget.
struct Exhausted {
    /// Work-register state that would have started the next cycle.
    StateVector last_input;
};

struct RecyclingRun {
    std::variant<Hit, Exhausted> outcome;
    std::uint64_t cycles_used = 0;
    /// Analytic Hit probability of each executed cycle.
    std::vector<double> per_cycle_hit_prob;
    /// Largest max-entry distance between a cycle's input and the original.
    double max_input_drift = 0.0;

    [[nodiscard]] bool hit() const { return std::holds_alternative<Hit>(outcome); }
};

inline constexpr std::uint64_t kMaxCycleCap = 1'000'000;

/**
 * V = M^dagger / sqrt(c) for the Miss-branch operator M of a two-slit
 * gate, when M^dagger M = cI (within 1e-10, c > 1e-14). Absent otherwise,
 * and for gates with more than two slits.
 */
std::optional<Operator> exact_recovery(const DualityGate &gate);

/// The operator the dilation leaves on the auxiliary = 1 block of a
/// two-slit gate.
Operator miss_operator(const DualityGate &gate);

RecyclingRun run_recycling(const StateVector &input, const DualityGate &gate,
                           const RecoveryStrategy &strategy, std::uint64_t max_cycles,
                           Rng &rng);

/// 1 / ||(sum_i p_i U_i) input||^2. Throws InfiniteExpectation when the
/// Hit probability is at most 1e-14.
double expected_cycles(const DualityGate &gate, const StateVector &input);

/// ceil(64 / P0) capped at kMaxCycleCap.
std::uint64_t default_max_cycles(const DualityGate &gate, const StateVector &input);

} // namespace dualsim
