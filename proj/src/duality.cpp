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
#include "dualsim/duality.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

constexpr double kDegenerateNorm = 1e-14;

std::size_t aux_qubits_for(std::size_t m) {
    return static_cast<std::size_t>(std::bit_width(m - 1));
}

void require_normalized(const StateVector &s, const char *what) {
    if (!s.is_normalized()) {
        throw InvalidArgument(std::string(what) + " must be normalized (norm " +
                              std::to_string(s.norm()) + ")");
    }
}

} // namespace

SlitWeights::SlitWeights(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.size() < 2) {
        throw InvalidArgument("a duality gate needs at least two slits");
    }
    double sum = 0.0;
    for (double p : w_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw InvalidArgument("slit weights must be finite and non-negative");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw InvalidArgument("slit weights sum to " + std::to_string(sum) +
                              ", expected 1");
    }
}

SlitWeights SlitWeights::uniform(std::size_t m) {
    return SlitWeights(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

BranchState::BranchState(std::vector<Branch> branches) : b_(std::move(branches)) {
    std::vector<double> w;
    w.reserve(b_.size());
    for (const auto &br : b_) w.push_back(br.weight);
    (void)SlitWeights(std::move(w));
    for (const auto &br : b_) {
        if (br.sub_wave.num_qubits() != b_.front().sub_wave.num_qubits()) {
            throw DimensionMismatch("sub-waves must share one register size");
        }
        require_normalized(br.sub_wave, "every sub-wave");
    }
}

DualityGate::DualityGate(SlitWeights weights, std::vector<Operator> unitaries)
    : weights_(std::move(weights)), unitaries_(std::move(unitaries)) {
    if (unitaries_.size() != weights_.size()) {
        throw DimensionMismatch(std::to_string(weights_.size()) + " weights but " +
                                std::to_string(unitaries_.size()) + " unitaries");
    }
    const std::size_t d = unitaries_.front().dim();
    (void)unitaries_.front().num_qubits(); // power-of-two check
    for (std::size_t i = 0; i < unitaries_.size(); ++i) {
        if (unitaries_[i].dim() != d) {
            throw DimensionMismatch("slit unitaries must share one dimension");
        }
        if (!is_unitary(unitaries_[i])) {
            throw InvalidArgument("slit " + std::to_string(i) + " operator is not unitary");
        }
    }
}

Operator DualityGate::matrix() const {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < unitaries_.size(); ++i) {
        m += weights_[i] * unitaries_[i].matrix();
    }
    return Operator(std::move(m));
}

DilationCircuit::DilationCircuit(std::size_t num_work_qubits, Operator prepare,
                                 Operator combine, std::vector<Operator> slit_unitaries)
    : work_(num_work_qubits), prepare_(std::move(prepare)), combine_(std::move(combine)),
      slits_(std::move(slit_unitaries)) {
    aux_ = prepare_.num_qubits();
    if (aux_ == 0) throw InvalidArgument("dilation needs at least one auxiliary qubit");
    if (combine_.dim() != prepare_.dim()) {
        throw DimensionMismatch("prepare and combine act on different registers");
    }
    if (work_ + aux_ > kMaxQubits) {
        throw InvalidArgument("dilated register exceeds the dense cap");
    }
    if (!is_unitary(prepare_) || !is_unitary(combine_)) {
        throw InvalidArgument("prepare and combine must be unitary");
    }
    if (slits_.size() != prepare_.dim()) {
        throw DimensionMismatch("expected one slit unitary per auxiliary basis value");
    }
    for (const auto &u : slits_) {
        if (u.dim() != (std::size_t{1} << work_)) {
            throw DimensionMismatch("slit unitary does not match the work register");
        }
        if (!is_unitary(u)) throw InvalidArgument("slit operator is not unitary");
    }
}

Complex DilationCircuit::block_coefficient(std::size_t aux_value, std::size_t slit) const {
    return combine_(aux_value, slit) * prepare_(slit, 0);
}

Operator DilationCircuit::block_operator(std::size_t aux_value) const {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << work_);
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < slits_.size(); ++i) {
        m += block_coefficient(aux_value, i) * slits_[i].matrix();
    }
    return Operator(std::move(m));
}

Operator complete_unitary_from_column(const Vector &column) {
    const Eigen::Index n = column.size();
    if (n == 0 || std::abs(column.norm() - 1.0) > kNormalizedTol) {
        throw InvalidArgument("column to complete must be a unit vector");
    }
    const double lead = std::abs(column(0));
    const Complex phase = lead > 0.0 ? column(0) / lead : Complex(1.0, 0.0);
    // Rotate so the leading entry is real and non-negative; then the
    // reflection through u = v - e0 swaps e0 and v.
    Vector v = std::conj(phase) * column;
    Vector u = v;
    u(0) -= 1.0;
    const double uu = u.squaredNorm();
    Matrix w = Matrix::Identity(n, n);
    if (uu > 1e-30) w -= (2.0 / uu) * (u * u.adjoint());
    return Operator(phase * w);
}

BranchState divide(const StateVector &state, const SlitWeights &weights) {
    require_normalized(state, "divided state");
    std::vector<Branch> out;
    out.reserve(weights.size());
    for (double p : weights.values()) out.push_back({p, state});
    return BranchState(std::move(out));
}

BranchState apply_per_slit(const BranchState &branch, const std::vector<Operator> &unitaries) {
    if (unitaries.size() != branch.size()) {
        throw DimensionMismatch(std::to_string(branch.size()) + " branches but " +
                                std::to_string(unitaries.size()) + " unitaries");
    }
    std::vector<Branch> out;
    out.reserve(branch.size());
    for (std::size_t i = 0; i < branch.size(); ++i) {
        const auto &b = branch.branches()[i];
        const Operator &u = unitaries[i];
        if (u.dim() != b.sub_wave.dim()) {
            throw DimensionMismatch("slit " + std::to_string(i) +
                                    " unitary does not match the work register");
        }
        if (!is_unitary(u)) {
            throw InvalidArgument("slit " + std::to_string(i) + " operator is not unitary");
        }
        out.push_back({b.weight, StateVector(b.sub_wave.num_qubits(),
                                             u.matrix() * b.sub_wave.amplitudes())});
    }
    return BranchState(std::move(out));
}

StateVector combine(const BranchState &branch) {
    StateVector out(branch.num_qubits());
    for (const auto &b : branch.branches()) {
        out.amplitudes() += b.weight * b.sub_wave.amplitudes();
    }
    return out;
}

StateVector apply_duality_gate(const StateVector &state, const DualityGate &gate) {
    if (state.dim() != gate.dim()) {
        throw DimensionMismatch("state of dim " + std::to_string(state.dim()) +
                                " given to a gate of dim " + std::to_string(gate.dim()));
    }
    // The gate is linear, so an unnormalized input is routed through its
    // unit vector and scaled back.
    const double n = state.norm();
    if (n == 0.0) return StateVector(state.num_qubits());
    const bool unit = state.is_normalized();
    const StateVector in = unit ? state : StateVector(state.num_qubits(), state.amplitudes() / n);
    StateVector out = combine(apply_per_slit(divide(in, gate.weights()), gate.unitaries()));
    if (!unit) out.amplitudes() *= n;
    return out;
}

DilationCircuit build_dilation(const DualityGate &gate) {
    const std::size_t m = gate.num_slits();
    const std::size_t a = aux_qubits_for(m);
    const std::size_t slots = std::size_t{1} << a;

    Operator prepare;
    const auto &p = gate.weights();
    if (m == 2 && p[0] == p[1]) {
        prepare = gates::H();
    } else {
        Vector col = Vector::Zero(static_cast<Eigen::Index>(slots));
        for (std::size_t i = 0; i < m; ++i) col(static_cast<Eigen::Index>(i)) = std::sqrt(p[i]);
        col /= col.norm();
        prepare = complete_unitary_from_column(col);
    }
    Operator combine = prepare.adjoint();

    std::vector<Operator> slits = gate.unitaries();
    while (slits.size() < slots) slits.push_back(Operator::identity(gate.dim()));
    return DilationCircuit(gate.num_qubits(), std::move(prepare), std::move(combine),
                           std::move(slits));
}

DilationCircuit build_dilation(const DualityGate &gate, const Operator &combine) {
    DilationCircuit base = build_dilation(gate);
    return DilationCircuit(base.num_work_qubits(), base.prepare(), combine,
                           base.slit_unitaries());
}

StateVector run_dilation(const StateVector &work_state, const DilationCircuit &circuit) {
    if (work_state.num_qubits() != circuit.num_work_qubits()) {
        throw DimensionMismatch("work state has " + std::to_string(work_state.num_qubits()) +
                                " qubits, circuit expects " +
                                std::to_string(circuit.num_work_qubits()));
    }
    require_normalized(work_state, "dilation input");

    const auto rows = static_cast<Eigen::Index>(work_state.dim());
    const auto cols = static_cast<Eigen::Index>(circuit.prepare().dim());
    StateVector full(circuit.num_qubits());
    // Column a of this view is the auxiliary = a block.
    Eigen::Map<Matrix> blocks(full.amplitudes().data(), rows, cols);
    blocks.col(0) = work_state.amplitudes();

    blocks = blocks * circuit.prepare().matrix().transpose();
    for (Eigen::Index a = 0; a < cols; ++a) {
        blocks.col(a) = circuit.slit_unitaries()[static_cast<std::size_t>(a)].matrix() *
                        blocks.col(a);
    }
    blocks = blocks * circuit.combine().matrix().transpose();
    return full;
}

double aux_zero_probability(const StateVector &full_state, std::size_t num_work_qubits) {
    return aux_block(full_state, num_work_qubits, 0).amplitudes().squaredNorm();
}

StateVector aux_block(const StateVector &full_state, std::size_t num_work_qubits,
                      std::size_t aux_value) {
    if (num_work_qubits > full_state.num_qubits()) {
        throw DimensionMismatch("work register larger than the full register");
    }
    const std::size_t block = std::size_t{1} << num_work_qubits;
    if (aux_value >= (full_state.dim() >> num_work_qubits)) {
        throw InvalidArgument("auxiliary value out of range");
    }
    return StateVector(num_work_qubits,
                       full_state.amplitudes().segment(static_cast<Eigen::Index>(aux_value * block),
                                                       static_cast<Eigen::Index>(block)));
}

MeasurementOutcome conditional_measure(const StateVector &full_state,
                                       std::size_t num_work_qubits, Rng &rng) {
    if (num_work_qubits >= full_state.num_qubits()) {
        throw DimensionMismatch("no auxiliary register to condition on");
    }
    require_normalized(full_state, "measured state");

    const StateVector zero_block = aux_block(full_state, num_work_qubits, 0);
    const double p0 = zero_block.amplitudes().squaredNorm();
    if (rng.uniform() < p0) {
        if (std::sqrt(p0) < kDegenerateNorm) {
            throw DegenerateBranch("auxiliary = 0 branch has vanishing norm");
        }
        StateVector post = zero_block.normalized();
        const double u = rng.uniform();
        double cumulative = 0.0;
        std::size_t index = 0;
        std::size_t last_nonzero = 0;
        bool found = false;
        for (std::size_t i = 0; i < post.dim(); ++i) {
            const double pi = std::norm(post[i]);
            if (pi > 0.0) last_nonzero = i;
            cumulative += pi;
            if (!found && u < cumulative) {
                index = i;
                found = true;
            }
        }
        // Rounding can leave the cumulative sum a hair below u.
        if (!found) index = last_nonzero;
        return Hit{std::move(post), index};
    }

    StateVector rest = full_state;
    rest.amplitudes().head(static_cast<Eigen::Index>(zero_block.dim())).setZero();
    if (rest.norm() < kDegenerateNorm) {
        throw DegenerateBranch("auxiliary != 0 branch has vanishing norm");
    }
    return Miss{rest.normalized()};
}

} // namespace dualsim
