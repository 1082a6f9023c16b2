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
 * Operator algebra of duality gates: writing arbitrary and normal operators
 * as alpha * sum_i p_i U_i, and telling unitary gates from contractive ones.
 */
#pragma once

#include <vector>

#include "dualsim/duality.hpp"
#include "dualsim/statevec.hpp"

namespace dualsim {

/// alpha * sum_i p_i U_i, plus the reconstruction residual measured when it
/// was built.
struct LcuDecomposition {
    double alpha;
    SlitWeights weights;
    std::vector<Operator> unitaries;
    /// max |alpha * sum_i p_i U_i - A| against the source operator.
    double residual;

    [[nodiscard]] Operator reconstruct() const;
};

enum class GateClass { Unitary, StrictlyContractive };

/// max |A A^dagger - A^dagger A| <= tol * max(1, ||A||_2).
bool check_normal(const Operator &a, double tol = kUnitaryTol);

/**
 * Four-term decomposition of any square operator. A = H1 + i H2 with
 * Hermitian parts; each H_k / s (s = largest spectral norm of the two)
 * is the real part of the unitary V_k = H_k/s + i sqrt(I - (H_k/s)^2).
 * Result: alpha = 2s, p = 1/4 each, U = (V1, V1^dagger, iV2, iV2^dagger).
 */
LcuDecomposition lcu_decompose(const Operator &a);

/**
 * Two-term decomposition of a normal operator into commuting unitaries
 * sharing its eigenbasis. Each eigenvalue lambda / alpha with
 * alpha = max |lambda| is split as the mean of two unit phases
 * arg(lambda) +- arccos(|lambda| / alpha). Throws NotNormal.
 */
LcuDecomposition normal_decompose(const Operator &a, double tol = kUnitaryTol);

GateClass classify_duality_gate(const DualityGate &gate, double tol = kUnitaryTol);

} // namespace dualsim
