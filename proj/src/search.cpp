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
#include "dualsim/search.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

constexpr std::uint64_t kMaxRepetitionCap = 1'000'000;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

SearchAttempt search_attempts(const StateVector &prepared, const DilationCircuit &circuit,
                              std::uint64_t j, std::uint64_t max_repetitions, Rng &rng) {
    SearchAttempt out;
    for (std::uint64_t rep = 1; rep <= max_repetitions; ++rep) {
        out.repetitions = rep;
        out.duality_oracle_calls += 1;
        out.grover_oracle_calls += j;
        MeasurementOutcome m = conditional_measure(run_dilation(prepared, circuit),
                                                   circuit.num_work_qubits(), rng);
        if (const auto *hit = std::get_if<Hit>(&m)) {
            out.hit_index = hit->sampled_index;
            return out;
        }
    }
    return out;
}

void require_dense(std::size_t num_qubits) {
    if (num_qubits > kMaxDenseSearchQubits) {
        throw InvalidArgument("dense search operators are limited to " +
                              std::to_string(kMaxDenseSearchQubits) + " qubits");
    }
}

} // namespace

SearchProblem::SearchProblem(std::size_t n, std::vector<std::size_t> marked)
    : n_(n), marked_(std::move(marked)) {
    if (n_ == 0 || n_ + 1 > kMaxQubits) {
        throw InvalidArgument("database qubits must be in [1, " +
                              std::to_string(kMaxQubits - 1) + "]");
    }
    std::sort(marked_.begin(), marked_.end());
    if (std::adjacent_find(marked_.begin(), marked_.end()) != marked_.end()) {
        throw InvalidArgument("marked indices must be distinct");
    }
    if (marked_.empty() || marked_.size() >= size()) {
        throw InvalidArgument("need 1 <= marked count < database size");
    }
    if (marked_.back() >= size()) {
        throw InvalidArgument("marked index " + std::to_string(marked_.back()) +
                              " outside the database");
    }
}

bool SearchProblem::is_marked(std::size_t index) const {
    return std::binary_search(marked_.begin(), marked_.end(), index);
}

HybridParams HybridParams::make(std::uint64_t j, std::size_t database_size,
                                std::size_t num_marked) {
    if (num_marked == 0 || num_marked > database_size) {
        throw InvalidArgument("need 1 <= marked count <= database size");
    }
    return {j, std::asin(std::sqrt(static_cast<double>(num_marked) /
                                   static_cast<double>(database_size)))};
}

double HybridParams::success_probability() const {
    const double s = std::sin(static_cast<double>(2 * j + 1) * beta);
    return s * s;
}

Operator oracle_unitary(const SearchProblem &problem) {
    require_dense(problem.num_qubits());
    const auto n = static_cast<Eigen::Index>(problem.size());
    Vector d = Vector::Constant(n, -1.0);
    for (auto t : problem.marked()) d(static_cast<Eigen::Index>(t)) = 1.0;
    return Operator(d.asDiagonal().toDenseMatrix());
}

Operator phase_oracle(const SearchProblem &problem) {
    return Operator(-oracle_unitary(problem).matrix());
}

Operator diffusion_operator(std::size_t num_qubits) {
    require_dense(num_qubits);
    const auto n = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
    Matrix m = Matrix::Constant(n, n, 2.0 / static_cast<double>(n));
    m -= Matrix::Identity(n, n);
    return Operator(std::move(m));
}

DualityGate search_gate(const SearchProblem &problem) {
    return DualityGate(SlitWeights::uniform(2),
                       {oracle_unitary(problem), Operator::identity(problem.size())});
}

MeasurementOutcome duality_search_step(const StateVector &state, const SearchProblem &problem,
                                       Rng &rng) {
    if (state.num_qubits() != problem.num_qubits()) {
        throw DimensionMismatch("state does not match the database register");
    }
    const DilationCircuit circuit = build_dilation(search_gate(problem));
    return conditional_measure(run_dilation(state, circuit), circuit.num_work_qubits(), rng);
}

StateVector grover_iterate(const StateVector &state, const SearchProblem &problem,
                           std::uint64_t iterations) {
    if (state.num_qubits() != problem.num_qubits()) {
        throw DimensionMismatch("state does not match the database register");
    }
    StateVector out = state;
    Vector &a = out.amplitudes();
    const double inv_n = 1.0 / static_cast<double>(out.dim());
    for (std::uint64_t it = 0; it < iterations; ++it) {
        for (auto t : problem.marked()) a(static_cast<Eigen::Index>(t)) = -a(static_cast<Eigen::Index>(t));
        const Complex twice_mean = 2.0 * a.sum() * inv_n;
        a = (-a).array() + twice_mean;
    }
    return out;
}

SearchAttempt hybrid_search(const SearchProblem &problem, std::uint64_t j,
                            std::uint64_t max_repetitions, Rng &rng) {
    if (max_repetitions == 0) throw InvalidArgument("max_repetitions must be positive");
    const StateVector prepared = grover_iterate(uniform_state(problem.num_qubits()), problem, j);
    const DilationCircuit circuit = build_dilation(search_gate(problem));
    return search_attempts(prepared, circuit, j, max_repetitions, rng);
}

std::vector<CurveRow> repetition_curve(std::size_t database_size, std::size_t num_marked,
                                       std::uint64_t j_max) {
    if (!is_power_of_two(database_size)) {
        throw InvalidArgument("database size must be a power of two");
    }
    if (num_marked == 0 || num_marked >= database_size) {
        throw InvalidArgument("need 1 <= marked count < database size");
    }
    std::vector<CurveRow> rows;
    rows.reserve(j_max + 1);
    for (std::uint64_t j = 0; j <= j_max; ++j) {
        const double p = HybridParams::make(j, database_size, num_marked).success_probability();
        rows.push_back({j, p, 1.0 / p});
    }
    return rows;
}

SearchStats run_search_experiment(const SearchProblem &problem, std::uint64_t j,
                                  std::uint64_t trials, std::uint64_t max_repetitions,
                                  std::uint64_t seed, unsigned threads) {
    if (trials == 0) throw InvalidArgument("trials must be positive");
    if (max_repetitions == 0) throw InvalidArgument("max_repetitions must be positive");

    const StateVector prepared = grover_iterate(uniform_state(problem.num_qubits()), problem, j);
    const DilationCircuit circuit = build_dilation(search_gate(problem));

    SearchStats stats;
    stats.trials = trials;
    stats.entries.resize(trials);
    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t t = begin; t < end; ++t) {
            Rng rng(derive_seed(seed, t));
            stats.entries[t] = {t, search_attempts(prepared, circuit, j, max_repetitions, rng)};
        }
    };

    const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, trials);
    if (workers == 1) {
        run_range(0, trials);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = w * chunk;
            const std::uint64_t end = std::min(trials, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
    }

    for (const auto &e : stats.entries) {
        stats.total_repetitions += e.attempt.repetitions;
        if (e.attempt.hit_index) ++stats.hits;
    }
    stats.empirical_success_rate =
        static_cast<double>(stats.hits) / static_cast<double>(trials);
    stats.empirical_per_attempt_rate =
        static_cast<double>(stats.hits) / static_cast<double>(stats.total_repetitions);
    stats.mean_repetitions =
        static_cast<double>(stats.total_repetitions) / static_cast<double>(trials);
    stats.analytic_success_prob =
        HybridParams::make(j, problem.size(), problem.num_marked()).success_probability();
    return stats;
}

std::uint64_t default_max_repetitions(const SearchProblem &problem, std::uint64_t j) {
    const double p =
        HybridParams::make(j, problem.size(), problem.num_marked()).success_probability();
    if (p <= 1e-14) return kMaxRepetitionCap;
    const double budget = std::ceil(64.0 / p);
    return budget >= static_cast<double>(kMaxRepetitionCap) ? kMaxRepetitionCap
                                                             : static_cast<std::uint64_t>(budget);
}

} // namespace dualsim
