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
 * Duality gates sum_i p_i U_i, in two forms:
 *
 *  - direct: divide a state into weighted copies, act on each copy with its
 *    own unitary, and recombine the weighted sum;
 *  - dilated: a unitary circuit on work + auxiliary qubits whose
 *    auxiliary = 0 block carries the duality-gate output. The auxiliary
 *    register is prepared by W (column 0 = sqrt(p)), each slit unitary is
 *    controlled on its auxiliary value, and W^dagger recombines.
 *
 * conditional_measure() post-selects on the auxiliary register being all
 * zeros. A failed post-selection is a Miss and leaves the normalized
 * complement; the pre-measurement state is never renormalized.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "dualsim/rng.hpp"
#include "dualsim/statevec.hpp"

namespace dualsim {

inline constexpr double kWeightSumTol = 1e-12;

/// Probability weights of m >= 2 slits; non-negative, summing to one.
class SlitWeights {
  public:
    explicit SlitWeights(std::vector<double> weights);

    [[nodiscard]] std::size_t size() const noexcept { return w_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return w_[i]; }
    [[nodiscard]] const std::vector<double> &values() const noexcept { return w_; }

    static SlitWeights uniform(std::size_t m);

  private:
    std::vector<double> w_;
};

struct Branch {
    double weight;
    StateVector sub_wave;
};

/// Direct-sum state: weighted, individually normalized sub-waves.
class BranchState {
  public:
    explicit BranchState(std::vector<Branch> branches);

    [[nodiscard]] const std::vector<Branch> &branches() const noexcept { return b_; }
    [[nodiscard]] std::size_t size() const noexcept { return b_.size(); }
    [[nodiscard]] std::size_t num_qubits() const { return b_.front().sub_wave.num_qubits(); }

  private:
    std::vector<Branch> b_;
};

class DualityGate {
  public:
    DualityGate(SlitWeights weights, std::vector<Operator> unitaries);

    [[nodiscard]] const SlitWeights &weights() const noexcept { return weights_; }
    [[nodiscard]] const std::vector<Operator> &unitaries() const noexcept {
        return unitaries_;
    }
    [[nodiscard]] std::size_t num_slits() const noexcept { return unitaries_.size(); }
    [[nodiscard]] std::size_t num_qubits() const { return unitaries_.front().num_qubits(); }
    [[nodiscard]] std::size_t dim() const { return unitaries_.front().dim(); }

    /// sum_i p_i U_i as a matrix.
    [[nodiscard]] Operator matrix() const;

  private:
    SlitWeights weights_;
    std::vector<Operator> unitaries_;
};

/**
 * Work + auxiliary circuit realizing a duality gate. Slits are indexed by
 * auxiliary basis value; slits past the gate's m are identity with zero
 * weight.
 */
class DilationCircuit {
  public:
    DilationCircuit(std::size_t num_work_qubits, Operator prepare, Operator combine,
                    std::vector<Operator> slit_unitaries);

    [[nodiscard]] std::size_t num_work_qubits() const noexcept { return work_; }
    [[nodiscard]] std::size_t num_aux_qubits() const noexcept { return aux_; }
    [[nodiscard]] std::size_t num_qubits() const noexcept { return work_ + aux_; }
    [[nodiscard]] const Operator &prepare() const noexcept { return prepare_; }
    [[nodiscard]] const Operator &combine() const noexcept { return combine_; }
    [[nodiscard]] const std::vector<Operator> &slit_unitaries() const noexcept {
        return slits_;
    }

    /// Coefficient of slit i in auxiliary block `a`: combine[a,i] * prepare[i,0].
    [[nodiscard]] Complex block_coefficient(std::size_t aux_value, std::size_t slit) const;
    /// sum_i combine[a,i] prepare[i,0] U_i: the operator landing in block `a`.
    /// Block 0 is the realized duality gate.
    [[nodiscard]] Operator block_operator(std::size_t aux_value) const;
    [[nodiscard]] Operator effective_operator() const { return block_operator(0); }

  private:
    std::size_t work_;
    std::size_t aux_;
    Operator prepare_;
    Operator combine_;
    std::vector<Operator> slits_;
};

struct Hit {
    /// Normalized auxiliary = 0 block, on the work register.
    StateVector post_state;
    std::size_t sampled_index;
};

struct Miss {
    /// Normalized complement on the full register; zero on auxiliary = 0.
    StateVector post_state;
};

using MeasurementOutcome = std::variant<Hit, Miss>;

/**
 * Unitary whose column 0 equals `column` (a unit vector), built from one
 * Householder reflection times the phase of column(0). With a real
 * non-negative leading entry the result is Hermitian and self-inverse.
 */
Operator complete_unitary_from_column(const Vector &column);

BranchState divide(const StateVector &state, const SlitWeights &weights);
BranchState apply_per_slit(const BranchState &branch,
                           const std::vector<Operator> &unitaries);
/// sum_i p_i sub_wave_i, without renormalization.
StateVector combine(const BranchState &branch);

/// (sum_i p_i U_i) |state>, computed as divide -> per-slit -> combine.
StateVector apply_duality_gate(const StateVector &state, const DualityGate &gate);

/// Dilation with combine = prepare^dagger, so block 0 is exactly the gate.
DilationCircuit build_dilation(const DualityGate &gate);
/// Dilation with an independent combine unitary on the auxiliary register.
/// The realized operator is reported by effective_operator().
DilationCircuit build_dilation(const DualityGate &gate, const Operator &combine);

/// Returns work_state (x) |0>_aux evolved through the circuit.
StateVector run_dilation(const StateVector &work_state, const DilationCircuit &circuit);

/// Squared norm of the auxiliary = 0 block.
double aux_zero_probability(const StateVector &full_state, std::size_t num_work_qubits);
/// The auxiliary = `aux_value` block as an (unnormalized) work-register state.
StateVector aux_block(const StateVector &full_state, std::size_t num_work_qubits,
                      std::size_t aux_value = 0);

MeasurementOutcome conditional_measure(const StateVector &full_state,
                                       std::size_t num_work_qubits, Rng &rng);

} // namespace dualsim
