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
 * Subcommand drivers behind the `dualsim` executable. Each reads its
 * inputs, writes its output file in one piece (no partial files survive
 * a failure), prints a key=value summary, and throws dualsim::Error on
 * failure.
 *
 * CSV outputs start with `# seed=<seed>` and `# command=<argv>` comment
 * lines; the remaining lines depend only on the flags and the seed.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dualsim::cli {

struct CommonConfig {
    std::uint64_t seed = 0;
    /// Echoed into output headers.
    std::string command_line;
};

struct SimulateConfig {
    CommonConfig common;
    std::string circuit_path;
    std::string out_path; // optional amplitude CSV
};

struct SearchConfig {
    CommonConfig common;
    std::size_t n = 0;
    std::vector<std::size_t> marked;
    std::uint64_t j = 0;
    std::uint64_t trials = 1;
    std::uint64_t max_repetitions = 0; // 0: default budget
    unsigned threads = 1;
    std::string out_path;
};

struct RecycleConfig {
    CommonConfig common;
    /// Either a circuit with one duality block, or the search gate on
    /// (n, marked) from the uniform input.
    std::string circuit_path;
    std::size_t n = 0;
    std::vector<std::size_t> marked;
    std::string strategy = "reset"; // reset | exact | custom
    std::string recovery_path;      // matrix file for custom
    std::uint64_t trials = 1;
    std::uint64_t max_cycles = 0; // 0: default budget
    std::string out_path;
};

struct DecomposeConfig {
    CommonConfig common;
    std::string in_path;
    std::string out_path; // empty: stdout only
    std::string mode = "lcu"; // lcu | normal
    double tol = 1e-10;
};

struct CurveConfig {
    CommonConfig common;
    std::size_t n = 0;
    std::size_t marked_count = 1;
    std::uint64_t j_max = 0;
    std::string out_path;
};

int cmd_simulate(const SimulateConfig &config, std::ostream &out);
int cmd_search(const SearchConfig &config, std::ostream &out);
int cmd_recycle(const RecycleConfig &config, std::ostream &out);
int cmd_decompose(const DecomposeConfig &config, std::ostream &out);
int cmd_curve(const CurveConfig &config, std::ostream &out);

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);

} // namespace dualsim::cli
