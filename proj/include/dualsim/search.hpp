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
 * Unsorted-database search in duality mode.
 *
 * One search step is the symmetric two-slit gate {1/2 D, 1/2 I}, where the
 * slit oracle D is +1 on marked items and -1 elsewhere. (D + I)/2 projects
 * onto the marked items, so a Hit always reads a marked index and happens
 * with probability equal to the marked weight of the input. Running j
 * rounds of amplitude amplification first raises that weight to
 * sin^2((2j+1) beta), beta = arcsin(sqrt(M/N)).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dualsim/duality.hpp"

namespace dualsim {

/// Oracle, diffusion and search-gate operators are stored densely; beyond
/// this many qubits they are refused rather than allocated.
inline constexpr std::size_t kMaxDenseSearchQubits = 12;

class SearchProblem {
  public:
    /// Database of 2^n items with `marked` indices; 1 <= M < N.
    SearchProblem(std::size_t n, std::vector<std::size_t> marked);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return std::size_t{1} << n_; }
    [[nodiscard]] const std::vector<std::size_t> &marked() const noexcept { return marked_; }
    [[nodiscard]] std::size_t num_marked() const noexcept { return marked_.size(); }
    [[nodiscard]] bool is_marked(std::size_t index) const;

  private:
    std::size_t n_;
    std::vector<std::size_t> marked_; // sorted
};

struct HybridParams {
    std::uint64_t j;
    /// arcsin(sqrt(M/N)), radians.
    double beta;

    static HybridParams make(std::uint64_t j, std::size_t database_size, std::size_t num_marked);
    /// sin^2((2j+1) beta).
    [[nodiscard]] double success_probability() const;
};

/// Result of one hybrid_search call.
struct SearchAttempt {
    std::uint64_t repetitions = 0;
    /// Absent when the repetition budget ran out.
    std::optional<std::size_t> hit_index;
    /// Oracle uses: one per duality step plus j per attempt.
    std::uint64_t duality_oracle_calls = 0;
    std::uint64_t grover_oracle_calls = 0;
};

struct SearchTrial {
    std::uint64_t trial;
    SearchAttempt attempt;
};

struct SearchStats {
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    std::uint64_t total_repetitions = 0;
    /// hits / trials.
    double empirical_success_rate = 0.0;
    /// hits / total_repetitions.
    double empirical_per_attempt_rate = 0.0;
    double mean_repetitions = 0.0;
    /// sin^2((2j+1) beta).
    double analytic_success_prob = 0.0;
    std::vector<SearchTrial> entries;
};

struct CurveRow {
    std::uint64_t j;
    double success_prob;
    double repetitions;
};

/// Diagonal slit oracle: +1 on marked items, -1 elsewhere.
Operator oracle_unitary(const SearchProblem &problem);
/// Standard phase oracle: -1 on marked items, +1 elsewhere.
Operator phase_oracle(const SearchProblem &problem);
/// 2|s><s| - I over the database register.
Operator diffusion_operator(std::size_t num_qubits);

/// The duality gate {1/2 oracle_unitary, 1/2 I}.
DualityGate search_gate(const SearchProblem &problem);

MeasurementOutcome duality_search_step(const StateVector &state, const SearchProblem &problem,
                                       Rng &rng);

/// `iterations` rounds of diffusion after phase oracle. The closed form
/// sin((2j+1) beta) only describes a uniform input; other inputs are
/// accepted as is.
StateVector grover_iterate(const StateVector &state, const SearchProblem &problem,
                           std::uint64_t iterations);

/// Prepare uniform, amplify j times, run one duality step; repeat from a
/// fresh preparation until a Hit or `max_repetitions` attempts.
SearchAttempt hybrid_search(const SearchProblem &problem, std::uint64_t j,
                            std::uint64_t max_repetitions, Rng &rng);

/// Rows j = 0..j_max of sin^2((2j+1) beta) and its reciprocal.
std::vector<CurveRow> repetition_curve(std::size_t database_size, std::size_t num_marked,
                                       std::uint64_t j_max);

/// `trials` hybrid searches; trial t draws from Rng(derive_seed(seed, t)).
/// Statistics do not depend on `threads`.
SearchStats run_search_experiment(const SearchProblem &problem, std::uint64_t j,
                                  std::uint64_t trials, std::uint64_t max_repetitions,
                                  std::uint64_t seed, unsigned threads = 1);

/// ceil(64 / sin^2((2j+1) beta)) capped at one million.
std::uint64_t default_max_repetitions(const SearchProblem &problem, std::uint64_t j);

} // namespace dualsim
