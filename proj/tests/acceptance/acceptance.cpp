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

// Release acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <unistd.h>

#include "dualsim/cli/commands.hpp"
#include "dualsim/duality.hpp"
#include "dualsim/errors.hpp"
#include "dualsim/opalg.hpp"
#include "dualsim/recycling.hpp"
#include "dualsim/search.hpp"
#include "test_support.hpp"

using namespace dualsim;
namespace fs = std::filesystem;
using dualsim::testing::random_gate;
using dualsim::testing::random_state;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct MeanAndError {
    double mean;
    double std_error;
};

MeanAndError mean_cycles(const StateVector &input, const DualityGate &gate,
                         const RecoveryStrategy &strategy, std::uint64_t trials,
                         std::uint64_t seed, std::uint64_t &misses) {
    double sum = 0.0, sum_sq = 0.0;
    misses = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const RecyclingRun run = run_recycling(input, gate, strategy, kMaxCycleCap, rng);
        if (!run.hit()) ++misses;
        const auto c = static_cast<double>(run.cycles_used);
        sum += c;
        sum_sq += c * c;
    }
    const auto n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = (sum_sq - n * mean * mean) / (n - 1);
    return {mean, std::sqrt(var / n)};
}

// 1. Direct duality gate vs the auxiliary = 0 block of its dilation.
Verdict dilation_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xACCE55);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        for (std::size_t m : {2U, 4U}) {
            const std::size_t n = 1 + static_cast<std::size_t>(k % 4);
            const DualityGate g = random_gate(m, n, rng);
            const StateVector phi = random_state(n, rng);
            const StateVector full = run_dilation(phi, build_dilation(g));
            worst = std::max(worst, max_abs_diff(aux_block(full, n, 0), apply_duality_gate(phi, g)));
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-10 && elapsed < 5.0,
            fmt("200 gates, max deviation %.3g (tol 1e-10), %.2f s (limit 5 s)", worst, elapsed)};
}

// 2. Hit frequency of the search step on 16 items with one marked.
Verdict duality_search_law() {
    const auto t0 = std::chrono::steady_clock::now();
    const SearchProblem p(4, {11});
    const StateVector in = uniform_state(4);
    const std::uint64_t trials = 100000;
    std::uint64_t hits = 0, wrong = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(2, t));
        const MeasurementOutcome m = duality_search_step(in, p, rng);
        if (const auto *hit = std::get_if<Hit>(&m)) {
            ++hits;
            if (!p.is_marked(hit->sampled_index)) ++wrong;
        }
    }
    const double q = 1.0 / 16;
    const double sigma = std::sqrt(double(trials) * q * (1 - q));
    const double z = (double(hits) - double(trials) * q) / sigma;
    const double elapsed = seconds_since(t0);
    return {std::abs(z) <= 4.0 && wrong == 0 && elapsed < 30.0,
            fmt("rate %.5f vs 0.0625, z=%.2f (limit 4), wrong-index hits %llu, %.2f s (limit 30 s)",
                double(hits) / double(trials), z, static_cast<unsigned long long>(wrong), elapsed)};
}

// 3. Mean recycling cycles under Reset (search gate) and exact recovery.
Verdict recycling_expectation() {
    const SearchProblem p(4, {11});
    const StateVector in = uniform_state(4);
    std::uint64_t miss_reset = 0, miss_exact = 0;
    const MeanAndError reset =
        mean_cycles(in, search_gate(p), recovery::Reset{in}, 100000, 3, miss_reset);

    const Complex i{0.0, 1.0};
    const DualityGate phase(SlitWeights::uniform(2), {gates::I(), i * gates::I()});
    const auto v = exact_recovery(phase);
    if (!v) return {false, "exact recovery not detected for the phase-slit gate"};
    const MeanAndError exact =
        mean_cycles(basis_state(1, 0), phase, recovery::ExactUnitary{*v}, 100000, 4, miss_exact);

    const double z_reset = (reset.mean - 16.0) / reset.std_error;
    const double z_exact = (exact.mean - 2.0) / exact.std_error;
    return {std::abs(z_reset) <= 3.0 && std::abs(z_exact) <= 3.0 && miss_reset == 0 &&
                miss_exact == 0,
            fmt("reset mean %.4f vs 16 (%.2f SE), exact mean %.4f vs 2 (%.2f SE), limit 3 SE",
                reset.mean, z_reset, exact.mean, z_exact)};
}

// 4. Amplitude-amplification closed form and the deterministic hybrid case.
Verdict hybrid_closed_form() {
    double worst = 0.0;
    for (std::size_t n : {2U, 4U, 10U}) {
        const std::size_t size = std::size_t{1} << n;
        const SearchProblem p(n, {size / 3});
        const double beta = std::asin(std::sqrt(1.0 / double(size)));
        StateVector state = uniform_state(n);
        for (std::uint64_t j = 0; j <= 40; ++j) {
            const double want = std::sin(double(2 * j + 1) * beta);
            worst = std::max(worst, std::abs(state[size / 3] - Complex(want)));
            state = grover_iterate(state, p, 1);
        }
    }
    const SearchProblem four(2, {1});
    int first_attempt = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        Rng rng(derive_seed(5, t));
        const SearchAttempt a = hybrid_search(four, 1, 1000, rng);
        if (a.hit_index && *a.hit_index == 1 && a.repetitions == 1) ++first_attempt;
    }
    return {worst <= 1e-10 && first_attempt == 1000,
            fmt("max amplitude error %.3g (tol 1e-10), first-attempt successes %d/1000", worst,
                first_attempt)};
}

// 5. Repetition curve for 1024 items from the curve command's CSV.
Verdict repetition_curve_figure(const fs::path &dir) {
    cli::CurveConfig c;
    c.common = {0, "acceptance curve"};
    c.n = 10;
    c.marked_count = 1;
    c.j_max = 40;
    c.out_path = (dir / "curve.csv").string();
    std::ostringstream sink;
    cli::cmd_curve(c, sink);

    std::vector<double> reps;
    std::istringstream csv(cli::read_file(c.out_path));
    for (std::string line; std::getline(csv, line);) {
        if (line.empty() || line[0] == '#' || line[0] == 'j') continue;
        reps.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    }
    if (reps.size() != 41) return {false, fmt("expected 41 rows, got %zu", reps.size())};

    const double beta = std::asin(1.0 / 32.0);
    std::size_t peak = 0;
    while (double(2 * peak + 1) * beta < std::numbers::pi / 2) ++peak;
    bool decreasing = true;
    for (std::size_t j = 1; j <= peak; ++j) decreasing = decreasing && reps[j] < reps[j - 1];
    const auto nearest = static_cast<std::size_t>(std::lround((std::numbers::pi / (2 * beta) - 1) / 2));
    double small_lo = 1e9, small_hi = 0.0;
    for (std::size_t j = 0; j <= 3; ++j) {
        const double r = reps[j] * double((2 * j + 1) * (2 * j + 1)) / 1024.0;
        small_lo = std::min(small_lo, r);
        small_hi = std::max(small_hi, r);
    }
    const bool pass = std::abs(reps[0] - 1024.0) <= 1e-6 && decreasing && reps[nearest] <= 1.001 &&
                      small_lo >= 0.98 && small_hi <= 1.02;
    return {pass, fmt("reps(0)=%.9f, decreasing through j=%zu: %s, reps(%zu)=%.6f (<= 1.001), "
                      "small-j ratio in [%.5f, %.5f]",
                      reps[0], peak, decreasing ? "yes" : "no", nearest, reps[nearest], small_lo,
                      small_hi)};
}

// 6. Four-unitary decomposition of arbitrary matrices.
Verdict lcu_round_trip() {
    Rng rng(6);
    double worst = 0.0;
    bool unitary = true;
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = std::size_t{2} << (k % 3);
        const Matrix a = dualsim::testing::random_disc_matrix(dim, rng);
        const LcuDecomposition d = lcu_decompose(Operator(a));
        worst = std::max(worst, max_abs_diff(d.reconstruct().matrix(), a));
        for (const auto &u : d.unitaries) unitary = unitary && is_unitary(u, 1e-10);
    }
    return {worst <= 1e-9 && unitary,
            fmt("50 matrices, max residual %.3g (tol 1e-9), all factors unitary: %s", worst,
                unitary ? "yes" : "no")};
}

// 7. Commuting decomposition of normal matrices; non-normal rejection.
Verdict normal_decomposition() {
    Rng rng(7);
    double residual = 0.0, commutator = 0.0;
    for (int k = 0; k < 50; ++k) {
        const std::size_t dim = std::size_t{2} << (k % 3);
        const Matrix a = dualsim::testing::random_normal_matrix(dim, rng);
        const LcuDecomposition d = normal_decompose(Operator(a));
        residual = std::max(residual, max_abs_diff(d.reconstruct().matrix(), a));
        const Matrix &u1 = d.unitaries[0].matrix();
        const Matrix &u2 = d.unitaries[1].matrix();
        commutator = std::max(commutator, (u1 * u2 - u2 * u1).cwiseAbs().maxCoeff());
    }
    auto rejected = [](const Matrix &a) {
        try {
            (void)normal_decompose(Operator(a));
            return false;
        } catch (const NotNormal &) {
            return true;
        }
    };
    Matrix shift = Matrix::Zero(2, 2);
    shift(0, 1) = 1.0;
    int rejections = rejected(shift) ? 1 : 0;
    for (int k = 0; k < 20; ++k) {
        Matrix a = dualsim::testing::random_normal_matrix(4, rng);
        a(k % 4, (k + 1) % 4) += 0.05 + 0.1 * rng.uniform();
        rejections += rejected(a) ? 1 : 0;
    }
    return {residual <= 1e-9 && commutator <= 1e-9 && rejections == 21,
            fmt("max residual %.3g, max commutator %.3g (tol 1e-9), rejected %d/21 non-normal",
                residual, commutator, rejections)};
}

// 8. Unitary duality gates are exactly the equal-slit ones.
Verdict extreme_points() {
    Rng rng(8);
    int unitary = 0;
    double drift = 0.0;
    std::vector<DualityGate> equal;
    for (int k = 0; k < 20; ++k) {
        const Operator u = dualsim::testing::random_unitary(4, rng);
        const std::size_t m = 2 + static_cast<std::size_t>(k % 3);
        equal.emplace_back(SlitWeights(dualsim::testing::random_weights(m, rng)),
                           std::vector<Operator>(m, u));
    }
    equal.emplace_back(SlitWeights::uniform(2), std::vector<Operator>(2, Operator::identity(4)));
    for (const auto &g : equal) {
        unitary += classify_duality_gate(g) == GateClass::Unitary ? 1 : 0;
        for (int probe = 0; probe < 10; ++probe) {
            drift = std::max(drift, std::abs(apply_duality_gate(random_state(2, rng), g).norm() - 1.0));
        }
    }
    int contracted = 0;
    for (int k = 0; k < 100; ++k) {
        const DualityGate g = random_gate(2 + static_cast<std::size_t>(k % 3), 2, rng);
        bool shrinks = false;
        for (int probe = 0; probe < 16 && !shrinks; ++probe) {
            shrinks = apply_duality_gate(random_state(2, rng), g).norm() < 1.0 - 1e-6;
        }
        contracted += shrinks ? 1 : 0;
    }
    return {unitary == 21 && drift <= 1e-12 && contracted == 100,
            fmt("equal-slit gates unitary %d/21, norm drift %.3g (tol 1e-12), distinct-slit gates "
                "contracting %d/100",
                unitary, drift, contracted)};
}

// 9. Same flags and seed give byte-identical output bodies.
Verdict determinism(const fs::path &dir) {
    auto body = [](const std::string &path) {
        std::istringstream in(cli::read_file(path));
        std::string out;
        for (std::string line; std::getline(in, line);) {
            if (line.rfind('#', 0) != 0) out += line + "\n";
        }
        return out;
    };
    const std::string circuit = (dir / "phase.txt").string();
    const std::string matrix = (dir / "shift.txt").string();
    cli::write_file_atomic(circuit, "qubits 1\ninit uniform\nduality 2\nweights 0.5 0.5\n"
                                    "slit 1\nx 0\nz 0\ny 0\nendduality\ncmeasure\n");
    cli::write_file_atomic(matrix, "2\n0 1\n0 0\n");

    std::vector<std::pair<const char *, std::function<void(const std::string &)>>> commands;
    std::ostringstream sink;
    commands.emplace_back("simulate", [&](const std::string &out) {
        cli::SimulateConfig c{{21, "simulate"}, circuit, out};
        cli::cmd_simulate(c, sink);
    });
    commands.emplace_back("search", [&](const std::string &out) {
        cli::SearchConfig c;
        c.common = {21, "search"};
        c.n = 5;
        c.marked = {4, 19};
        c.j = 1;
        c.trials = 2000;
        c.threads = 4;
        c.out_path = out;
        cli::cmd_search(c, sink);
    });
    commands.emplace_back("recycle", [&](const std::string &out) {
        cli::RecycleConfig c;
        c.common = {21, "recycle"};
        c.n = 4;
        c.marked = {7};
        c.trials = 2000;
        c.out_path = out;
        cli::cmd_recycle(c, sink);
    });
    commands.emplace_back("decompose", [&](const std::string &out) {
        cli::DecomposeConfig c;
        c.common = {21, "decompose"};
        c.in_path = matrix;
        c.out_path = out;
        cli::cmd_decompose(c, sink);
    });
    commands.emplace_back("curve", [&](const std::string &out) {
        cli::CurveConfig c;
        c.common = {21, "curve"};
        c.n = 10;
        c.j_max = 30;
        c.out_path = out;
        cli::cmd_curve(c, sink);
    });

    int identical = 0;
    std::string mismatched;
    for (const auto &[name, run] : commands) {
        const std::string a = (dir / (std::string(name) + "_a")).string();
        const std::string b = (dir / (std::string(name) + "_b")).string();
        run(a);
        run(b);
        if (body(a) == body(b) && !body(a).empty()) {
            ++identical;
        } else {
            mismatched += std::string(" ") + name;
        }
    }
    return {identical == static_cast<int>(commands.size()),
            fmt("%d/%zu commands byte-identical%s%s", identical, commands.size(),
                mismatched.empty() ? "" : ", differing:", mismatched.c_str())};
}

} // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / ("dualsim_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"dilation equivalence", dilation_equivalence},
        {"duality search law", duality_search_law},
        {"recycling expectation", recycling_expectation},
        {"hybrid closed form", hybrid_closed_form},
        {"repetition curve", [&] { return repetition_curve_figure(dir); }},
        {"four-unitary decomposition", lcu_round_trip},
        {"normal decomposition", normal_decomposition},
        {"unitary extreme points", extreme_points},
        {"determinism", [&] { return determinism(dir); }},
    };

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::printf("%s [%zu] %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    v.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(dir);
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
