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
#include "dualsim/statevec.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

constexpr double kDegenerateNorm = 1e-14;

std::size_t checked_dim(std::size_t num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw InvalidArgument("register of " + std::to_string(num_qubits) +
                              " qubits exceeds the dense cap of " +
                              std::to_string(kMaxQubits));
    }
    return std::size_t{1} << num_qubits;
}

void check_targets(std::size_t num_qubits, std::span<const std::size_t> targets,
                   std::span<const std::size_t> controls) {
    std::size_t seen = 0;
    auto mark = [&](std::size_t q, const char *what) {
        if (q >= num_qubits) {
            throw InvalidArgument(std::string(what) + " qubit " +
                                  std::to_string(q) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
        }
        const std::size_t bit = std::size_t{1} << q;
        if (seen & bit) {
            throw InvalidArgument("qubit " + std::to_string(q) +
                                  " listed more than once");
        }
        seen |= bit;
    };
    for (auto q : targets) mark(q, "target");
    for (auto q : controls) mark(q, "control");
}

// Shared kernel: for every basis index whose target bits are zero and whose
// control bits match, gather the 2^k amplitudes spanned by the targets,
// multiply, scatter.
StateVector apply_kernel(const StateVector &state, const Operator &op,
                         std::span<const std::size_t> targets,
                         std::span<const std::size_t> controls,
                         std::span<const int> control_values) {
    const std::size_t k = targets.size();
    if (op.dim() != (std::size_t{1} << k)) {
        throw DimensionMismatch("operator of dim " + std::to_string(op.dim()) +
                                " applied to " + std::to_string(k) +
                                " target qubits");
    }
    if (controls.size() != control_values.size()) {
        throw InvalidArgument("one control value is required per control qubit");
    }
    check_targets(state.num_qubits(), targets, controls);

    std::size_t target_mask = 0;
    std::vector<std::size_t> offsets(op.dim(), 0);
    for (std::size_t j = 0; j < k; ++j) {
        target_mask |= std::size_t{1} << targets[j];
    }
    for (std::size_t local = 0; local < op.dim(); ++local) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((local >> j) & 1U) offsets[local] |= std::size_t{1} << targets[j];
        }
    }
    std::size_t control_mask = 0;
    std::size_t control_pattern = 0;
    for (std::size_t c = 0; c < controls.size(); ++c) {
        const std::size_t bit = std::size_t{1} << controls[c];
        control_mask |= bit;
        if (control_values[c] != 0) control_pattern |= bit;
    }

    StateVector out = state;
    const Matrix &m = op.matrix();
    Vector in_block(static_cast<Eigen::Index>(op.dim()));
    for (std::size_t base = 0; base < state.dim(); ++base) {
        if ((base & target_mask) != 0) continue;
        if ((base & control_mask) != control_pattern) continue;
        for (std::size_t l = 0; l < op.dim(); ++l) {
            in_block(static_cast<Eigen::Index>(l)) = state[base | offsets[l]];
        }
        for (std::size_t r = 0; r < op.dim(); ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < op.dim(); ++c) {
                acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
                       in_block(static_cast<Eigen::Index>(c));
            }
            out[base | offsets[r]] = acc;
        }
    }
    return out;
}

bool is_exactly_diagonal(const Matrix &m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c && m(r, c) != Complex(0.0)) return false;
        }
    }
    return true;
}

} // namespace

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      amps_(Vector::Zero(static_cast<Eigen::Index>(checked_dim(num_qubits)))) {}

StateVector::StateVector(std::size_t num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != checked_dim(num_qubits)) {
        throw DimensionMismatch(std::to_string(amps_.size()) +
                                " amplitudes given for " +
                                std::to_string(num_qubits) + " qubits");
    }
}

StateVector::StateVector(std::size_t num_qubits,
                         std::initializer_list<Complex> amps)
    : StateVector(num_qubits,
                  Eigen::Map<const Vector>(amps.begin(),
                                           static_cast<Eigen::Index>(amps.size()))) {}

bool StateVector::is_normalized(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n < kDegenerateNorm) {
        throw DegenerateBranch("cannot normalize a state of norm " +
                               std::to_string(n));
    }
    return StateVector(num_qubits_, amps_ / n);
}

Operator::Operator(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw DimensionMismatch("operator must be a non-empty square matrix, got " +
                                std::to_string(m_.rows()) + "x" +
                                std::to_string(m_.cols()));
    }
    if (!m_.allFinite()) {
        throw InvalidArgument("operator has non-finite entries");
    }
}

Operator::Operator(std::size_t dim, std::initializer_list<Complex> row_major) {
    if (row_major.size() != dim * dim) {
        throw DimensionMismatch("expected " + std::to_string(dim * dim) +
                                " entries, got " +
                                std::to_string(row_major.size()));
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto it = row_major.begin();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = *it++;
    }
    *this = Operator(std::move(m));
}

Operator Operator::identity(std::size_t dim) {
    return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                     static_cast<Eigen::Index>(dim)));
}

std::size_t Operator::num_qubits() const {
    const std::size_t d = dim();
    if ((d & (d - 1)) != 0) {
        throw DimensionMismatch("operator dim " + std::to_string(d) +
                                " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(d));
}

Operator operator*(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator product dims differ");
    return Operator(a.m_ * b.m_);
}

Operator operator+(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator sum dims differ");
    return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator &a, const Operator &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator difference dims differ");
    return Operator(a.m_ - b.m_);
}

Operator operator*(Complex s, const Operator &a) { return Operator(s * a.m_); }

namespace gates {

Operator I() { return Operator::identity(2); }
Operator X() { return Operator(2, {0, 1, 1, 0}); }
Operator Y() { return Operator(2, {0, Complex(0, -1), Complex(0, 1), 0}); }
Operator Z() { return Operator(2, {1, 0, 0, -1}); }
Operator H() {
    const double r = 1.0 / std::sqrt(2.0);
    return Operator(2, {r, r, r, -r});
}
Operator S() { return Operator(2, {1, 0, 0, Complex(0, 1)}); }
Operator T() { return Operator(2, {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}); }
Operator CX() {
    // local index = target + 2*control
    return Operator(4, {1, 0, 0, 0,
                        0, 0, 0, 1,
                        0, 0, 1, 0,
                        0, 1, 0, 0});
}

} // namespace gates

StateVector basis_state(std::size_t num_qubits, std::size_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) {
        throw InvalidArgument("basis index " + std::to_string(index) +
                              " out of range for " + std::to_string(num_qubits) +
                              " qubits");
    }
    s[index] = 1.0;
    return s;
}

StateVector uniform_state(std::size_t num_qubits) {
    StateVector s(num_qubits);
    s.amplitudes().setConstant(1.0 / std::sqrt(static_cast<double>(s.dim())));
    return s;
}

StateVector apply_operator(const StateVector &state, const Operator &op,
                           std::span<const std::size_t> targets) {
    return apply_kernel(state, op, targets, {}, {});
}

StateVector apply_operator(const StateVector &state, const Operator &op,
                           std::initializer_list<std::size_t> targets) {
    return apply_operator(state, op,
                          std::span<const std::size_t>(targets.begin(), targets.size()));
}

StateVector controlled_apply(const StateVector &state, const Operator &op,
                             std::span<const std::size_t> targets,
                             std::span<const std::size_t> controls,
                             std::span<const int> control_values) {
    if (!is_unitary(op)) {
        throw InvalidArgument("controlled operator must be unitary");
    }
    return apply_kernel(state, op, targets, controls, control_values);
}

StateVector controlled_apply(const StateVector &state, const Operator &op,
                             std::initializer_list<std::size_t> targets,
                             std::size_t control, int control_value) {
    const std::size_t controls[] = {control};
    const int values[] = {control_value};
    return controlled_apply(state, op,
                            std::span<const std::size_t>(targets.begin(), targets.size()),
                            controls, values);
}

double norm(const StateVector &state) { return state.norm(); }

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("inner product of states with dims " +
                                std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());
}

bool is_unitary(const Operator &op, double tol) {
    const Matrix &m = op.matrix();
    // Oracles and identity slits are diagonal; skip the cubic product for them.
    if (is_exactly_diagonal(m)) {
        return ((m.diagonal().cwiseAbs2().array() - 1.0).abs() <= tol).all();
    }
    const Matrix defect = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    return defect.cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("matrix shapes differ");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("state dims differ");
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

} // namespace dualsim
