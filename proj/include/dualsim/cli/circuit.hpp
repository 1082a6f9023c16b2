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
 * Line-oriented circuit description.
 *
 *     # comment (also allowed after any statement)
 *     qubits 3                 first statement, exactly once
 *     init uniform | init basis <k>
 *     h|x|y|z|s|t <q>
 *     cx <control> <target>
 *     oracle <i>...            +1 on the listed indices, -1 elsewhere
 *     diffusion                2|s><s| - I on the whole register
 *     duality <m>              opens a block of m slits
 *     weights <p1> ... <pm>    required inside a block, sums to 1
 *     slit <i>[:] [gate]       following gate lines act on slit i; one gate
 *                              may share the line
 *     endduality
 *     cmeasure                 optional, right after endduality
 *
 * Slits with no gates are the identity. Auxiliary qubits of the dilation
 * are implicit and never addressed by the text.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dualsim/duality.hpp"

namespace dualsim::cli {

struct InitOp {
    enum class Kind { Uniform, Basis } kind = Kind::Uniform;
    std::size_t index = 0;

    bool operator==(const InitOp &) const = default;
};

/// A named gate: h x y z s t cx oracle diffusion.
struct GateOp {
    std::string name;
    std::vector<std::size_t> args;

    bool operator==(const GateOp &) const = default;
};

struct DualityBlock {
    std::vector<double> weights;
    std::vector<std::vector<GateOp>> slits;
    bool cmeasure = false;

    bool operator==(const DualityBlock &) const = default;
};

using Instruction = std::variant<InitOp, GateOp, DualityBlock>;

struct CircuitSpec {
    std::size_t num_qubits = 0;
    std::vector<Instruction> instructions;

    bool operator==(const CircuitSpec &) const = default;
};

struct MeasurementRecord {
    bool hit;
    std::optional<std::size_t> index;
    double hit_probability;
};

struct SimulationResult {
    /// Work register after the last instruction, or the full register
    /// (work + auxiliary) of the Miss that stopped the run.
    StateVector state;
    std::vector<MeasurementRecord> measurements;
    bool stopped_on_miss = false;
};

/// Throws ParseError with the offending line and token.
CircuitSpec parse_circuit(std::string_view text);
/// Canonical text; parse_circuit(serialize_circuit(s)) == s.
std::string serialize_circuit(const CircuitSpec &spec);

/// Unitary of a gate list on `num_qubits` qubits.
Operator gate_sequence_unitary(std::size_t num_qubits, const std::vector<GateOp> &gates);
DualityGate block_gate(std::size_t num_qubits, const DualityBlock &block);

StateVector apply_gate(const StateVector &state, const GateOp &gate);

/**
 * Runs the circuit from |0...0>. A block without cmeasure applies the
 * duality gate directly (the state may lose norm); a block with cmeasure
 * runs the dilation and post-selects. A Hit continues on the measured
 * work state; a Miss ends the run.
 */
SimulationResult simulate(const CircuitSpec &spec, Rng &rng);

} // namespace dualsim::cli
