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
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dualsim/errors.hpp"
#include "dualsim/opalg.hpp"
#include "test_support.hpp"

using namespace dualsim;
using dualsim::testing::random_disc_matrix;
using dualsim::testing::random_gate;
using dualsim::testing::random_normal_matrix;
using dualsim::testing::random_unitary;

namespace {

const Operator kShift(2, {0, 1, 0, 0});

void expect_valid(const LcuDecomposition &d, const Matrix &source) {
    EXPECT_GE(d.alpha, 0.0);
    for (const auto &u : d.unitaries) EXPECT_TRUE(is_unitary(u, 1e-10));
    EXPECT_LE(max_abs_diff(d.reconstruct().matrix(), source), 1e-9);
    EXPECT_LE(d.residual, 1e-9);
}

Matrix commutator(const Operator &a, const Operator &b) {
    return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

} // namespace

TEST(CheckNormal, Examples) {
    Rng rng(1);
    EXPECT_TRUE(check_normal(random_unitary(4, rng)));
    EXPECT_FALSE(check_normal(kShift));
    const Matrix g = random_disc_matrix(4, rng);
    EXPECT_TRUE(check_normal(Operator(Matrix(g + g.adjoint()))));
    EXPECT_TRUE(check_normal(Operator(random_normal_matrix(8, rng))));
}

TEST(CheckNormal, ToleranceScalesWithNorm) {
    Rng rng(2);
    const Matrix scaled = 10.0 * random_normal_matrix(8, rng);
    EXPECT_TRUE(check_normal(Operator(scaled), 1e-10));
    EXPECT_FALSE(check_normal(Operator(Matrix(10.0 * kShift.matrix())), 1e-10));
    // Threshold is tol * max(1, |A|): a 1e-12 shift passes at 1e-10.
    EXPECT_TRUE(check_normal(Operator(Matrix(1e-6 * kShift.matrix())), 1e-10));
}

TEST(LcuDecompose, Identity) {
    const LcuDecomposition d = lcu_decompose(gates::I());
    EXPECT_EQ(d.unitaries.size(), 4U);
    EXPECT_NEAR(d.alpha, 2.0, 1e-15);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(d.weights[i], 0.25);
    expect_valid(d, Matrix::Identity(2, 2));
}

TEST(LcuDecompose, DiagonalAndNilpotent) {
    const Operator diag(2, {2, 0, 0, 0});
    expect_valid(lcu_decompose(diag), diag.matrix());
    // Witness: diag(2, 0) = 2 (I/2 + Z/2).
    const Matrix witness = 2.0 * (0.5 * gates::I().matrix() + 0.5 * gates::Z().matrix());
    EXPECT_EQ(max_abs_diff(witness, diag.matrix()), 0.0);

    const LcuDecomposition d = lcu_decompose(kShift);
    EXPECT_EQ(d.unitaries.size(), 4U);
    expect_valid(d, kShift.matrix());
}

TEST(LcuDecompose, ZeroMatrix) {
    const Operator zero(Matrix::Zero(4, 4));
    const LcuDecomposition d = lcu_decompose(zero);
    EXPECT_EQ(d.alpha, 0.0);
    expect_valid(d, zero.matrix());
}

TEST(LcuDecompose, RandomRoundTrip) {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t dim = std::size_t{2} << (trial % 3);
        const Matrix a = random_disc_matrix(dim, rng);
        expect_valid(lcu_decompose(Operator(a)), a);
    }
}

TEST(LcuDecompose, ScaleIsTwiceLargestHermitianNorm) {
    Rng rng(4);
    const Matrix a = 3.0 * random_disc_matrix(4, rng);
    const Matrix h1 = (a + a.adjoint()) / 2.0;
    const Matrix h2 = (a - a.adjoint()) / Complex(0, 2);
    Eigen::JacobiSVD<Matrix> s1(h1), s2(h2);
    const double s = std::max(s1.singularValues()(0), s2.singularValues()(0));
    EXPECT_NEAR(lcu_decompose(Operator(a)).alpha, 2.0 * s, 1e-12);
}

TEST(NormalDecompose, UnitaryInputDecomposesAsItself) {
    const LcuDecomposition d = normal_decompose(gates::Z());
    EXPECT_NEAR(d.alpha, 1.0, 1e-15);
    ASSERT_EQ(d.unitaries.size(), 2U);
    EXPECT_LE(max_abs_diff(d.unitaries[0].matrix(), gates::Z().matrix()), 1e-14);
    EXPECT_LE(max_abs_diff(d.unitaries[1].matrix(), gates::Z().matrix()), 1e-14);
}

TEST(NormalDecompose, DiagonalHalf) {
    const Operator a(2, {1, 0, 0, 0.5});
    const LcuDecomposition d = normal_decompose(a);
    EXPECT_NEAR(d.alpha, 1.0, 1e-15);
    expect_valid(d, a.matrix());
    // Eigenphases on the 1/2 eigenvector are +-pi/3.
    const double p1 = std::arg(d.unitaries[0](1, 1));
    const double p2 = std::arg(d.unitaries[1](1, 1));
    EXPECT_NEAR(std::abs(p1), std::numbers::pi / 3, 1e-12);
    EXPECT_NEAR(p1 + p2, 0.0, 1e-12);
}

TEST(NormalDecompose, RejectsNonNormal) {
    EXPECT_THROW(normal_decompose(kShift), NotNormal);
}

TEST(NormalDecompose, ZeroMatrix) {
    const LcuDecomposition d = normal_decompose(Operator(Matrix::Zero(2, 2)));
    EXPECT_EQ(d.alpha, 0.0);
    expect_valid(d, Matrix::Zero(2, 2));
}

TEST(NormalDecompose, RandomNormalInputsCommute) {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = std::size_t{2} << (trial % 3);
        const Matrix a = random_normal_matrix(dim, rng);
        const LcuDecomposition d = normal_decompose(Operator(a));
        expect_valid(d, a);
        EXPECT_LE(commutator(d.unitaries[0], d.unitaries[1]).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_TRUE(check_normal(d.reconstruct()));
    }
}

TEST(NormalDecompose, RepeatedEigenvalues) {
    Rng rng(6);
    const Matrix q = random_unitary(4, rng).matrix();
    Vector lambda(4);
    lambda << 0.5, 0.5, Complex(0, 0.3), Complex(0, 0.3);
    const Matrix a = q * lambda.asDiagonal() * q.adjoint();
    const LcuDecomposition d = normal_decompose(Operator(a));
    expect_valid(d, a);
    EXPECT_LE(commutator(d.unitaries[0], d.unitaries[1]).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(NormalDecompose, PerturbedNonNormalRejected) {
    Rng rng(7);
    int rejected = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_normal_matrix(4, rng);
        a(0, 3) += 0.1;
        try {
            (void)normal_decompose(Operator(a));
        } catch (const NotNormal &) {
            ++rejected;
        }
    }
    EXPECT_EQ(rejected, 20);
}

TEST(ClassifyDualityGate, Examples) {
    EXPECT_EQ(classify_duality_gate(DualityGate(SlitWeights::uniform(2), {gates::I(), gates::I()})),
              GateClass::Unitary);
    EXPECT_EQ(classify_duality_gate(DualityGate(SlitWeights::uniform(2), {gates::X(), gates::I()})),
              GateClass::StrictlyContractive);
    Rng rng(8);
    const Operator u = random_unitary(4, rng);
    EXPECT_EQ(classify_duality_gate(DualityGate(SlitWeights::uniform(2), {u, u})),
              GateClass::Unitary);
}

TEST(ClassifyDualityGate, EqualSlitsUpToGlobalPhase) {
    // A common global phase on every slit keeps the gate unitary.
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const Operator u = random_unitary(4, rng);
        const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        const Operator pu = phase * u;
        const DualityGate g(SlitWeights(dualsim::testing::random_weights(3, rng)), {pu, pu, pu});
        EXPECT_EQ(classify_duality_gate(g), GateClass::Unitary);
    }
}

TEST(ClassifyDualityGate, RandomDistinctSlitsContract) {
    Rng rng(10);
    int contractive = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(trial % 3);
        if (classify_duality_gate(random_gate(m, 2, rng)) == GateClass::StrictlyContractive) {
            ++contractive;
        }
    }
    EXPECT_GE(contractive, trials * 99 / 100);
}
