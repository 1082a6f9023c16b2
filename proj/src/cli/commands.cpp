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
#include "dualsim/cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "dualsim/cli/circuit.hpp"
#include "dualsim/errors.hpp"
#include "dualsim/matrix_text.hpp"
#include "dualsim/opalg.hpp"
#include "dualsim/recycling.hpp"
#include "dualsim/search.hpp"

namespace dualsim::cli {

namespace {

class IoError : public Error {
  public:
    explicit IoError(const std::string &message) : Error("io_error", message) {}
};

std::string header(const CommonConfig &c) {
    return "# seed=" + std::to_string(c.seed) + "\n# command=" + c.command_line + "\n";
}

std::string amplitudes_csv(const StateVector &s) {
    std::string out = "index,real,imag\n";
    for (std::size_t i = 0; i < s.dim(); ++i) {
        out += std::to_string(i) + "," + format_real(s[i].real()) + "," +
               format_real(s[i].imag()) + "\n";
    }
    return out;
}

// The work state entering the (single) duality block of a recycling
// circuit, and the gate it defines.
std::pair<StateVector, DualityGate> recycling_circuit(const CircuitSpec &spec) {
    std::optional<std::size_t> block_at;
    for (std::size_t k = 0; k < spec.instructions.size(); ++k) {
        if (std::holds_alternative<DualityBlock>(spec.instructions[k])) {
            if (block_at) throw InvalidArgument("recycling circuit must hold exactly one duality block");
            block_at = k;
        }
    }
    if (!block_at) throw InvalidArgument("recycling circuit has no duality block");
    if (*block_at + 1 != spec.instructions.size()) {
        throw InvalidArgument("the duality block must be the last instruction");
    }
    CircuitSpec prefix{spec.num_qubits,
                       {spec.instructions.begin(),
                        spec.instructions.begin() + static_cast<std::ptrdiff_t>(*block_at)}};
    Rng unused(0);
    StateVector input = simulate(prefix, unused).state;
    return {std::move(input),
            block_gate(spec.num_qubits, std::get<DualityBlock>(spec.instructions[*block_at]))};
}

} // namespace

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string &path, const std::string &content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + path + "'");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw IoError("write to '" + path + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot move output into '" + path + "': " + ec.message());
    }
}

int cmd_simulate(const SimulateConfig &config, std::ostream &out) {
    const CircuitSpec spec = parse_circuit(read_file(config.circuit_path));
    Rng rng(config.common.seed);
    const SimulationResult result = simulate(spec, rng);

    out << "seed=" << config.common.seed << "\n";
    for (const auto &m : result.measurements) {
        out << "cmeasure=" << (m.hit ? "hit" : "miss")
            << " hit_probability=" << format_real(m.hit_probability);
        if (m.index) out << " index=" << *m.index;
        out << "\n";
    }
    out << "outcome=" << (result.stopped_on_miss ? "miss" : "completed") << "\n";
    out << "qubits=" << result.state.num_qubits() << "\n";
    out << "norm=" << format_real(result.state.norm()) << "\n";
    const std::string csv = amplitudes_csv(result.state);
    out << csv;
    if (!config.out_path.empty()) write_file_atomic(config.out_path, header(config.common) + csv);
    return 0;
}

int cmd_search(const SearchConfig &config, std::ostream &out) {
    const SearchProblem problem(config.n, config.marked);
    const std::uint64_t budget = config.max_repetitions != 0
                                     ? config.max_repetitions
                                     : default_max_repetitions(problem, config.j);
    const SearchStats stats = run_search_experiment(problem, config.j, config.trials, budget,
                                                    config.common.seed, config.threads);

    std::string csv = header(config.common) + "trial,repetitions,hit_index\n";
    for (const auto &e : stats.entries) {
        csv += std::to_string(e.trial) + "," + std::to_string(e.attempt.repetitions) + "," +
               (e.attempt.hit_index ? std::to_string(*e.attempt.hit_index) : std::string("-1")) +
               "\n";
    }
    if (!config.out_path.empty()) write_file_atomic(config.out_path, csv);

    out << "trials=" << stats.trials << "\n"
        << "hits=" << stats.hits << "\n"
        << "success_rate=" << format_real(stats.empirical_success_rate) << "\n"
        << "per_attempt_rate=" << format_real(stats.empirical_per_attempt_rate) << "\n"
        << "mean_repetitions=" << format_real(stats.mean_repetitions) << "\n"
        << "analytic_success_prob=" << format_real(stats.analytic_success_prob) << "\n"
        << "analytic_repetitions=" << format_real(1.0 / stats.analytic_success_prob) << "\n";
    return 0;
}

int cmd_recycle(const RecycleConfig &config, std::ostream &out) {
    if (config.trials == 0) throw InvalidArgument("--trials must be positive");
    std::optional<std::pair<StateVector, DualityGate>> setup;
    if (!config.circuit_path.empty()) {
        setup.emplace(recycling_circuit(parse_circuit(read_file(config.circuit_path))));
    } else {
        const SearchProblem problem(config.n, config.marked);
        setup.emplace(uniform_state(problem.num_qubits()), search_gate(problem));
    }
    const auto &[input, gate] = *setup;

    RecoveryStrategy strategy = recovery::Reset{input};
    if (config.strategy == "exact") {
        auto v = exact_recovery(gate);
        if (!v) {
            throw InvalidArgument("no exact recovery unitary exists: the Miss operator is not "
                                  "proportional to a unitary");
        }
        strategy = recovery::ExactUnitary{*v};
    } else if (config.strategy == "custom") {
        if (config.recovery_path.empty()) {
            throw InvalidArgument("custom recovery needs --recovery <matrix file>");
        }
        strategy = recovery::Custom{parse_matrix_text(read_file(config.recovery_path))};
    } else if (config.strategy != "reset") {
        throw InvalidArgument("unknown recovery strategy '" + config.strategy + "'");
    }

    const std::uint64_t budget =
        config.max_cycles != 0 ? config.max_cycles : default_max_cycles(gate, input);
    std::map<std::uint64_t, std::uint64_t> histogram;
    std::uint64_t exhausted = 0;
    std::uint64_t total_cycles = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        Rng rng(derive_seed(config.common.seed, t));
        const RecyclingRun run = run_recycling(input, gate, strategy, budget, rng);
        total_cycles += run.cycles_used;
        if (run.hit()) {
            ++histogram[run.cycles_used];
        } else {
            ++exhausted;
        }
    }

    std::string csv = header(config.common) + "cycles,count\n";
    for (const auto &[cycles, count] : histogram) {
        csv += std::to_string(cycles) + "," + std::to_string(count) + "\n";
    }
    if (!config.out_path.empty()) write_file_atomic(config.out_path, csv);

    out << "trials=" << config.trials << "\n"
        << "hits=" << (config.trials - exhausted) << "\n"
        << "exhausted=" << exhausted << "\n"
        << "max_cycles=" << budget << "\n"
        << "mean_cycles="
        << format_real(static_cast<double>(total_cycles) / static_cast<double>(config.trials))
        << "\n";
    try {
        out << "expected_cycles=" << format_real(expected_cycles(gate, input)) << "\n";
    } catch (const InfiniteExpectation &) {
        out << "expected_cycles=inf\n";
    }
    return 0;
}

int cmd_decompose(const DecomposeConfig &config, std::ostream &out) {
    const Operator a = parse_matrix_text(read_file(config.in_path));
    LcuDecomposition d = [&] {
        if (config.mode == "lcu") return lcu_decompose(a);
        if (config.mode == "normal") return normal_decompose(a, config.tol);
        throw InvalidArgument("unknown decomposition mode '" + config.mode + "'");
    }();

    std::string text = header(config.common);
    text += "mode " + config.mode + "\n";
    text += "alpha " + format_real(d.alpha) + "\n";
    text += "residual " + format_real(d.residual) + "\n";
    text += "weights";
    for (double p : d.weights.values()) text += " " + format_real(p);
    text += "\n";
    for (std::size_t i = 0; i < d.unitaries.size(); ++i) {
        text += "unitary " + std::to_string(i) + "\n" + format_matrix_text(d.unitaries[i]);
    }
    if (!config.out_path.empty()) {
        write_file_atomic(config.out_path, text);
    } else {
        out << text;
    }
    out << "alpha=" << format_real(d.alpha) << "\n"
        << "terms=" << d.unitaries.size() << "\n"
        << "residual=" << format_real(d.residual) << "\n";
    return 0;
}

int cmd_curve(const CurveConfig &config, std::ostream &out) {
    if (config.n == 0 || config.n >= 63) throw InvalidArgument("--n must be in [1, 62]");
    const std::size_t database = std::size_t{1} << config.n;
    const auto rows = repetition_curve(database, config.marked_count, config.j_max);

    std::string csv = header(config.common) + "j,success_prob,repetitions\n";
    for (const auto &r : rows) {
        csv += std::to_string(r.j) + "," + format_real(r.success_prob) + "," +
               format_real(r.repetitions) + "\n";
    }
    if (!config.out_path.empty()) {
        write_file_atomic(config.out_path, csv);
        out << "rows=" << rows.size() << "\n";
    } else {
        out << csv;
    }
    return 0;
}

} // namespace dualsim::cli
