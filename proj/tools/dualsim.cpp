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
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualsim/cli/commands.hpp"
#include "dualsim/errors.hpp"

namespace {

// One JSON object per line on stderr.
void report_error(const std::string &kind, const std::string &message) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

std::string join_argv(int argc, char **argv) {
    std::string out;
    for (int i = 0; i < argc; ++i) {
        if (i) out += ' ';
        out += argv[i];
    }
    return out;
}

} // namespace

int main(int argc, char **argv) {
    using namespace dualsim::cli;

    CLI::App app{"Duality-mode quantum computing simulator"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", seed, "Master seed (64-bit unsigned)")->capture_default_str();
    };

    SimulateConfig sim;
    auto *simulate = app.add_subcommand("simulate", "Run a circuit file");
    simulate->add_option("--circuit", sim.circuit_path, "Circuit file")->required();
    simulate->add_option("--out", sim.out_path, "Write final amplitudes as CSV");
    add_seed(simulate);

    SearchConfig search;
    auto *search_cmd = app.add_subcommand("search", "Monte-Carlo duality/hybrid search");
    search_cmd->add_option("--n", search.n, "Database qubits (N = 2^n)")->required();
    search_cmd->add_option("--marked", search.marked, "Marked indices")->required();
    search_cmd->add_option("--j", search.j, "Amplitude-amplification rounds")->capture_default_str();
    search_cmd->add_option("--trials", search.trials, "Independent trials")->capture_default_str();
    search_cmd->add_option("--max-reps", search.max_repetitions,
                           "Attempts per trial (0: 64 / success probability, capped)");
    search_cmd->add_option("--threads", search.threads, "Worker threads")->capture_default_str();
    search_cmd->add_option("--out", search.out_path, "Per-trial CSV");
    add_seed(search_cmd);

    RecycleConfig recycle;
    auto *recycle_cmd = app.add_subcommand("recycle", "Recycling loop over many trials");
    auto *circuit_opt = recycle_cmd->add_option(
        "--circuit", recycle.circuit_path, "Circuit ending in one duality block");
    auto *n_opt = recycle_cmd->add_option("--n", recycle.n, "Search gate database qubits");
    recycle_cmd->add_option("--marked", recycle.marked, "Search gate marked indices")->needs(n_opt);
    circuit_opt->excludes(n_opt);
    recycle_cmd->add_option("--strategy", recycle.strategy, "reset | exact | custom")
        ->check(CLI::IsMember({"reset", "exact", "custom"}))
        ->capture_default_str();
    recycle_cmd->add_option("--recovery", recycle.recovery_path, "Matrix file for custom V");
    recycle_cmd->add_option("--trials", recycle.trials, "Independent runs")->capture_default_str();
    recycle_cmd->add_option("--max-cycles", recycle.max_cycles,
                            "Cycle budget (0: 64 / P0, capped at 10^6)");
    recycle_cmd->add_option("--out", recycle.out_path, "Cycle histogram CSV");
    add_seed(recycle_cmd);

    DecomposeConfig decompose;
    auto *decompose_cmd = app.add_subcommand("decompose", "Write an operator as alpha * sum p_i U_i");
    decompose_cmd->add_option("--in", decompose.in_path, "Matrix file")->required();
    decompose_cmd->add_option("--out", decompose.out_path, "Output file (default: stdout)");
    decompose_cmd->add_option("--mode", decompose.mode, "lcu | normal")
        ->check(CLI::IsMember({"lcu", "normal"}))
        ->capture_default_str();
    decompose_cmd->add_option("--tol", decompose.tol, "Normality tolerance")->capture_default_str();
    add_seed(decompose_cmd);

    CurveConfig curve;
    auto *curve_cmd = app.add_subcommand("curve", "Repetition count versus j");
    curve_cmd->add_option("--n", curve.n, "Database qubits (N = 2^n)")->required();
    curve_cmd->add_option("--marked-count", curve.marked_count, "Number of marked items")
        ->capture_default_str();
    curve_cmd->add_option("--jmax", curve.j_max, "Largest j")->required();
    curve_cmd->add_option("--out", curve.out_path, "CSV path (default: stdout)");
    add_seed(curve_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        report_error("usage", e.what());
        return 2;
    }

    const CommonConfig common{seed, join_argv(argc, argv)};
    try {
        if (*simulate) {
            sim.common = common;
            return cmd_simulate(sim, std::cout);
        }
        if (*search_cmd) {
            search.common = common;
            return cmd_search(search, std::cout);
        }
        if (*recycle_cmd) {
            if (recycle.circuit_path.empty() && recycle.n == 0) {
                report_error("usage", "recycle needs --circuit or --n/--marked");
                return 2;
            }
            recycle.common = common;
            return cmd_recycle(recycle, std::cout);
        }
        if (*decompose_cmd) {
            decompose.common = common;
            return cmd_decompose(decompose, std::cout);
        }
        curve.common = common;
        return cmd_curve(curve, std::cout);
    } catch (const dualsim::Error &e) {
        report_error(e.kind(), e.what());
    } catch (const std::exception &e) {
        report_error("internal", e.what());
    }
    return 1;
}
