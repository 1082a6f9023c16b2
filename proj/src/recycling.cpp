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
#include "dualsim/recycling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

constexpr double kZeroProb = 1e-14;
constexpr double kRecoveryTol = 1e-10;
// Blocks below this norm count as empty when deciding which auxiliary
// value a Miss state sits on.
constexpr double kEmptyBlock = 1e-12;

double hit_probability(const Operator &effective, const StateVector &input) {
    return (effective.matrix() * input.amplitudes()).squaredNorm();
}

// "Flips the auxiliary back to 0": the Miss state must sit on a single
// auxiliary value, whose block becomes the new work state.
StateVector miss_work_state(const StateVector &miss, std::size_t work_qubits) {
    const std::size_t blocks = miss.dim() >> work_qubits;
    std::optional<StateVector> found;
    for (std::size_t a = 1; a < blocks; ++a) {
        StateVector b = aux_block(miss, work_qubits, a);
        if (b.norm() <= kEmptyBlock) continue;
        if (found) {
            throw InvalidArgument(
                "Miss state spans several auxiliary values; only Reset recovery applies");
        }
        found = std::move(b);
    }
    if (!found) throw DegenerateBranch("Miss state has no auxiliary != 0 support");
    return found->normalized();
}

void check_operator(const Operator &v, std::size_t dim) {
    if (v.dim() != dim) {
        throw DimensionMismatch("recovery operator does not match the work register");
    }
    if (!is_unitary(v)) throw InvalidArgument("recovery operator is not unitary");
}

} // namespace

Operator miss_operator(const DualityGate &gate) {
    if (gate.num_slits() != 2) {
        throw InvalidArgument("the Miss operator is defined for two-slit gates");
    }
    return build_dilation(gate).block_operator(1);
}

std::optional<Operator> exact_recovery(const DualityGate &gate) {
    if (gate.num_slits() != 2) return std::nullopt;
    const Matrix m = miss_operator(gate).matrix();
    const Matrix gram = m.adjoint() * m;
    const double c = gram(0, 0).real();
    if (c <= kZeroProb) return std::nullopt;
    const Matrix scaled_identity = c * Matrix::Identity(gram.rows(), gram.cols());
    if (max_abs_diff(gram, scaled_identity) > kRecoveryTol) return std::nullopt;
    return Operator(m.adjoint() / std::sqrt(c));
}

RecyclingRun run_recycling(const StateVector &input, const DualityGate &gate,
                           const RecoveryStrategy &strategy, std::uint64_t max_cycles,
                           Rng &rng) {
    if (max_cycles == 0) throw InvalidArgument("max_cycles must be positive");
    if (input.dim() != gate.dim()) {
        throw DimensionMismatch("input does not match the gate's work register");
    }
    if (!input.is_normalized()) throw InvalidArgument("recycling input must be normalized");
    std::visit(
        [&](const auto &s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, recovery::Reset>) {
                if (s.input.dim() != gate.dim() || !s.input.is_normalized()) {
                    throw InvalidArgument("Reset input must be a normalized work state");
                }
            } else {
                check_operator(s.v, gate.dim());
            }
        },
        strategy);

    const DilationCircuit circuit = build_dilation(gate);
    const Operator effective = circuit.effective_operator();
    const std::size_t work = circuit.num_work_qubits();

    RecyclingRun run{Exhausted{input}, 0, {}, 0.0};
    StateVector current = input;
    for (std::uint64_t cycle = 1; cycle <= max_cycles; ++cycle) {
        run.cycles_used = cycle;
        run.max_input_drift = std::max(run.max_input_drift, max_abs_diff(current, input));
        run.per_cycle_hit_prob.push_back(hit_probability(effective, current));

        MeasurementOutcome outcome = conditional_measure(run_dilation(current, circuit), work, rng);
        if (auto *hit = std::get_if<Hit>(&outcome)) {
            run.outcome = std::move(*hit);
            return run;
        }
        const StateVector &miss = std::get<Miss>(outcome).post_state;
        current = std::visit(
            [&](const auto &s) -> StateVector {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, recovery::Reset>) {
                    return s.input;
                } else {
                    StateVector w = miss_work_state(miss, work);
                    return StateVector(w.num_qubits(), s.v.matrix() * w.amplitudes());
                }
            },
            strategy);
    }
    run.outcome = Exhausted{current};
    return run;
}

double expected_cycles(const DualityGate &gate, const StateVector &input) {
    if (input.dim() != gate.dim()) {
        throw DimensionMismatch("input does not match the gate's work register");
    }
    const double p0 = hit_probability(gate.matrix(), input);
    if (p0 <= kZeroProb) {
        throw InfiniteExpectation("Hit probability " + std::to_string(p0) + " is zero");
    }
    return 1.0 / p0;
}

std::uint64_t default_max_cycles(const DualityGate &gate, const StateVector &input) {
    const double p0 = hit_probability(gate.matrix(), input);
    if (p0 <= kZeroProb) return kMaxCycleCap;
    const double budget = std::ceil(64.0 / p0);
    return budget >= static_cast<double>(kMaxCycleCap) ? kMaxCycleCap
                                                        : static_cast<std::uint64_t>(budget);
}

} // namespace dualsim
