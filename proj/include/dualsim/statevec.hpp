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
 * Dense state vectors, operators and the gate-application kernel.
 *
 * Qubit convention, used by every module: qubit 0 is the least-significant
 * bit of a basis-state index. Auxiliary (slit) qubits are always placed
 * above the work qubits, so the auxiliary value of basis index `k` in a
 * register with `w` work qubits is `k >> w`.
 *
 * Operators passed to apply_operator() are laid out in the local basis of
 * their target list: bit `j` of a row/column index refers to `targets[j]`.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dualsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense registers are capped here; 2^24 amplitudes is 256 MiB.
inline constexpr std::size_t kMaxQubits = 24;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormalizedTol = 1e-10;

/// Amplitudes of a `num_qubits` register. May be unnormalized.
class StateVector {
  public:
    StateVector() : StateVector(0) {}
    /// All-zero amplitudes.
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, Vector amplitudes);
    StateVector(std::size_t num_qubits, std::initializer_list<Complex> amps);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amps_.size());
    }
    [[nodiscard]] const Vector &amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Vector &amplitudes() noexcept { return amps_; }
    [[nodiscard]] std::span<const Complex> view() const noexcept {
        return {amps_.data(), dim()};
    }
    [[nodiscard]] Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    Complex &operator[](std::size_t i) { return amps_(static_cast<Eigen::Index>(i)); }

    [[nodiscard]] double norm() const { return amps_.norm(); }
    [[nodiscard]] bool is_normalized(double tol = kNormalizedTol) const;
    /// Copy scaled to unit norm. Throws DegenerateBranch when norm < 1e-14.
    [[nodiscard]] StateVector normalized() const;

  private:
    std::size_t num_qubits_;
    Vector amps_;
};

/// A square complex matrix with finite entries.
class Operator {
  public:
    Operator() = default;
    explicit Operator(Matrix m);
    Operator(std::size_t dim, std::initializer_list<Complex> row_major);

    static Operator identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    /// log2(dim) when dim is a power of two, otherwise throws.
    [[nodiscard]] std::size_t num_qubits() const;
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const {
        return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    [[nodiscard]] Operator adjoint() const { return Operator(m_.adjoint()); }

    friend Operator operator*(const Operator &a, const Operator &b);
    friend Operator operator+(const Operator &a, const Operator &b);
    friend Operator operator-(const Operator &a, const Operator &b);
    friend Operator operator*(Complex s, const Operator &a);

  private:
    Matrix m_;
};

namespace gates {
Operator I();
Operator X();
Operator Y();
Operator Z();
Operator H();
Operator S();
Operator T();
/// Control on local qubit 1, target local qubit 0.
Operator CX();
} // namespace gates

StateVector basis_state(std::size_t num_qubits, std::size_t index);
StateVector uniform_state(std::size_t num_qubits);

/**
 * Applies `op` (possibly non-unitary) to `targets`, identity elsewhere.
 * The result is not renormalized.
 */
StateVector apply_operator(const StateVector &state, const Operator &op,
                           std::span<const std::size_t> targets);
StateVector apply_operator(const StateVector &state, const Operator &op,
                           std::initializer_list<std::size_t> targets);

/// Applies `op` only on the subspace where every control qubit holds its
/// matching value.
StateVector controlled_apply(const StateVector &state, const Operator &op,
                             std::span<const std::size_t> targets,
                             std::span<const std::size_t> controls,
                             std::span<const int> control_values);
StateVector controlled_apply(const StateVector &state, const Operator &op,
                             std::initializer_list<std::size_t> targets,
                             std::size_t control, int control_value);

double norm(const StateVector &state);
/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const StateVector &a, const StateVector &b);

/// max |(op^† op - I)_{ij}| <= tol.
bool is_unitary(const Operator &op, double tol = kUnitaryTol);

/// Largest entry magnitude of a - b.
double max_abs_diff(const Matrix &a, const Matrix &b);
double max_abs_diff(const StateVector &a, const StateVector &b);

} // namespace dualsim
