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
#include "dualsim/opalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

const Complex kI{0.0, 1.0};

Matrix diag_conjugate(const Matrix &q, const Vector &d) {
    return q * d.asDiagonal() * q.adjoint();
}

// V = H + i sqrt(I - H^2) for Hermitian H with spectrum in [-1, 1].
Matrix unitary_lift(const Eigen::SelfAdjointEigenSolver<Matrix> &eig, double scale) {
    const Eigen::VectorXd &lambda = eig.eigenvalues();
    Vector d(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        const double x = std::clamp(lambda(k) / scale, -1.0, 1.0);
        d(k) = Complex(x, std::sqrt(std::max(0.0, 1.0 - x * x)));
    }
    return diag_conjugate(eig.eigenvectors(), d);
}

double spectral_radius(const Eigen::SelfAdjointEigenSolver<Matrix> &eig) {
    return eig.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

Operator LcuDecomposition::reconstruct() const {
    const auto d = static_cast<Eigen::Index>(unitaries.front().dim());
    Matrix m = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < unitaries.size(); ++i) {
        m += weights[i] * unitaries[i].matrix();
    }
    return Operator(alpha * m);
}

bool check_normal(const Operator &a, double tol) {
    const Matrix &m = a.matrix();
    const Matrix commutator = m * m.adjoint() - m.adjoint() * m;
    const double spectral = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
    return commutator.cwiseAbs().maxCoeff() <= tol * std::max(1.0, spectral);
}

LcuDecomposition lcu_decompose(const Operator &a) {
    const Matrix &m = a.matrix();
    const Matrix h1 = (m + m.adjoint()) / 2.0;
    const Matrix h2 = (m - m.adjoint()) / (2.0 * kI);

    Eigen::SelfAdjointEigenSolver<Matrix> eig1(h1);
    Eigen::SelfAdjointEigenSolver<Matrix> eig2(h2);
    const double s = std::max(spectral_radius(eig1), spectral_radius(eig2));
    const bool zero = m.cwiseAbs().maxCoeff() == 0.0;
    const double scale = zero ? 1.0 : std::max(s, 1e-300);

    const Matrix v1 = unitary_lift(eig1, scale);
    const Matrix v2 = unitary_lift(eig2, scale);
    LcuDecomposition out{zero ? 0.0 : 2.0 * scale,
                         SlitWeights::uniform(4),
                         {Operator(v1), Operator(v1.adjoint()), Operator(kI * v2),
                          Operator(kI * v2.adjoint())},
                         0.0};
    out.residual = max_abs_diff(out.reconstruct().matrix(), m);
    return out;
}

LcuDecomposition normal_decompose(const Operator &a, double tol) {
    if (!check_normal(a, tol)) {
        throw NotNormal("operator is not normal within tolerance " + std::to_string(tol));
    }
    const Matrix &m = a.matrix();
    // For a normal matrix the Schur form is diagonal, and Q is unitary even
    // when eigenvalues repeat.
    Eigen::ComplexSchur<Matrix> schur(m);
    const Matrix &q = schur.matrixU();
    const Vector lambda = schur.matrixT().diagonal();
    const double alpha = lambda.cwiseAbs().maxCoeff();

    Vector d1(lambda.size());
    Vector d2(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (alpha == 0.0) {
            d1(k) = d2(k) = 1.0;
            continue;
        }
        const double arg = std::arg(lambda(k));
        const double spread = std::acos(std::min(1.0, std::abs(lambda(k)) / alpha));
        d1(k) = std::polar(1.0, arg + spread);
        d2(k) = std::polar(1.0, arg - spread);
    }
    LcuDecomposition out{alpha,
                         SlitWeights::uniform(2),
                         {Operator(diag_conjugate(q, d1)), Operator(diag_conjugate(q, d2))},
                         0.0};
    out.residual = max_abs_diff(out.reconstruct().matrix(), m);
    return out;
}

GateClass classify_duality_gate(const DualityGate &gate, double tol) {
    return is_unitary(gate.matrix(), tol) ? GateClass::Unitary
                                          : GateClass::StrictlyContractive;
}

} // namespace dualsim
