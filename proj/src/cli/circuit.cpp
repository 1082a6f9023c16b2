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
#include "dualsim/cli/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "dualsim/errors.hpp"
#include "dualsim/matrix_text.hpp"

namespace dualsim::cli {

namespace {

const std::map<std::string, Operator (*)(), std::less<>> kSingleQubit = {
    {"h", gates::H}, {"x", gates::X}, {"y", gates::Y},
    {"z", gates::Z}, {"s", gates::S}, {"t", gates::T},
};

struct Line {
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        Line out{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            if (j > i) out.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!out.tokens.empty()) lines.push_back(std::move(out));
    }
    return lines;
}

class Parser {
  public:
    explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

    CircuitSpec run() {
        if (lines_.empty()) throw ParseError(1, "", "empty circuit");
        const Line &first = lines_.front();
        if (first.tokens[0] != "qubits") {
            fail(first, first.tokens[0], "circuit must start with 'qubits <n>'");
        }
        expect_args(first, 1);
        spec_.num_qubits = integer(first, first.tokens[1]);
        if (spec_.num_qubits == 0 || spec_.num_qubits >= kMaxQubits) {
            fail(first, first.tokens[1], "qubit count out of range");
        }

        for (pos_ = 1; pos_ < lines_.size(); ++pos_) {
            const Line &line = lines_[pos_];
            const auto head = line.tokens[0];
            if (head == "qubits") {
                fail(line, head, "'qubits' may appear only once");
            } else if (head == "init") {
                spec_.instructions.emplace_back(init(line));
            } else if (head == "duality") {
                spec_.instructions.emplace_back(block(line));
            } else if (head == "cmeasure") {
                fail(line, head, "'cmeasure' must directly follow 'endduality'");
            } else if (head == "weights" || head == "slit" || head == "endduality") {
                fail(line, head, "statement outside a duality block");
            } else {
                spec_.instructions.emplace_back(gate(line));
            }
        }
        return std::move(spec_);
    }

  private:
    [[noreturn]] static void fail(const Line &line, std::string_view token,
                                  const std::string &message) {
        throw ParseError(line.number, std::string(token), message);
    }

    static void expect_args(const Line &line, std::size_t n) {
        if (line.tokens.size() != n + 1) {
            fail(line, line.tokens[0],
                 "expected " + std::to_string(n) + " argument(s) to '" +
                     std::string(line.tokens[0]) + "'");
        }
    }

    static std::size_t integer(const Line &line, std::string_view tok) {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            fail(line, tok, "expected a non-negative integer");
        }
        return v;
    }

    static double real(const Line &line, std::string_view tok) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
            fail(line, tok, "expected a decimal number");
        }
        return v;
    }

    std::size_t qubit(const Line &line, std::string_view tok) const {
        const std::size_t q = integer(line, tok);
        if (q >= spec_.num_qubits) fail(line, tok, "qubit out of range");
        return q;
    }

    InitOp init(const Line &line) const {
        if (line.tokens.size() >= 2 && line.tokens[1] == "uniform") {
            expect_args(line, 1);
            return {InitOp::Kind::Uniform, 0};
        }
        if (line.tokens.size() >= 2 && line.tokens[1] == "basis") {
            expect_args(line, 2);
            const std::size_t k = integer(line, line.tokens[2]);
            if (k >= (std::size_t{1} << spec_.num_qubits)) {
                fail(line, line.tokens[2], "basis index out of range");
            }
            return {InitOp::Kind::Basis, k};
        }
        fail(line, line.tokens.size() >= 2 ? line.tokens[1] : line.tokens[0],
             "expected 'init uniform' or 'init basis <k>'");
    }

    GateOp gate(const Line &line) const {
        const auto head = line.tokens[0];
        GateOp op{std::string(head), {}};
        if (kSingleQubit.contains(head)) {
            expect_args(line, 1);
            op.args.push_back(qubit(line, line.tokens[1]));
        } else if (head == "cx") {
            expect_args(line, 2);
            op.args = {qubit(line, line.tokens[1]), qubit(line, line.tokens[2])};
            if (op.args[0] == op.args[1]) fail(line, line.tokens[2], "control equals target");
        } else if (head == "oracle") {
            if (line.tokens.size() < 2) fail(line, head, "'oracle' needs at least one index");
            for (std::size_t k = 1; k < line.tokens.size(); ++k) {
                const std::size_t i = integer(line, line.tokens[k]);
                if (i >= (std::size_t{1} << spec_.num_qubits)) {
                    fail(line, line.tokens[k], "oracle index out of range");
                }
                if (std::find(op.args.begin(), op.args.end(), i) != op.args.end()) {
                    fail(line, line.tokens[k], "duplicate oracle index");
                }
                op.args.push_back(i);
            }
        } else if (head == "diffusion") {
            expect_args(line, 0);
        } else {
            fail(line, head, "unknown statement");
        }
        return op;
    }

    DualityBlock block(const Line &open) {
        expect_args(open, 1);
        const std::size_t m = integer(open, open.tokens[1]);
        if (m < 2) fail(open, open.tokens[1], "a duality block needs at least two slits");
        if (m > (std::size_t{1} << (kMaxQubits - spec_.num_qubits))) {
            fail(open, open.tokens[1], "too many slits for the register cap");
        }
        DualityBlock out;
        out.slits.resize(m);
        std::vector<bool> seen(m, false);
        std::optional<std::size_t> current;
        bool closed = false;
        for (++pos_; pos_ < lines_.size(); ++pos_) {
            const Line &line = lines_[pos_];
            const auto head = line.tokens[0];
            if (head == "endduality") {
                expect_args(line, 0);
                closed = true;
                break;
            }
            if (head == "weights") {
                if (!out.weights.empty()) fail(line, head, "weights given twice");
                expect_args(line, m);
                for (std::size_t k = 1; k <= m; ++k) out.weights.push_back(real(line, line.tokens[k]));
                try {
                    (void)SlitWeights(out.weights);
                } catch (const Error &e) {
                    fail(line, head, e.what());
                }
            } else if (head == "slit") {
                // slit <i>[:] [gate statement]
                if (line.tokens.size() < 2) fail(line, head, "expected a slit index");
                auto tok = line.tokens[1];
                std::size_t rest = 2;
                if (!tok.empty() && tok.back() == ':') {
                    tok.remove_suffix(1);
                } else if (rest < line.tokens.size() && line.tokens[rest] == ":") {
                    ++rest;
                }
                const std::size_t i = integer(line, tok);
                if (i >= m) fail(line, tok, "slit index out of range");
                if (seen[i]) fail(line, tok, "slit listed twice");
                seen[i] = true;
                current = i;
                if (rest < line.tokens.size()) {
                    const Line inline_gate{line.number,
                                           {line.tokens.begin() + static_cast<std::ptrdiff_t>(rest),
                                            line.tokens.end()}};
                    out.slits[i].push_back(gate(inline_gate));
                }
            } else if (head == "duality" || head == "init" || head == "qubits" ||
                       head == "cmeasure") {
                fail(line, head, "not allowed inside a duality block");
            } else {
                if (!current) fail(line, head, "gate inside a duality block before any 'slit'");
                out.slits[*current].push_back(gate(line));
            }
        }
        if (!closed) fail(open, open.tokens[0], "missing 'endduality'");
        if (out.weights.empty()) fail(open, open.tokens[0], "duality block without 'weights'");
        if (pos_ + 1 < lines_.size() && lines_[pos_ + 1].tokens[0] == "cmeasure") {
            ++pos_;
            expect_args(lines_[pos_], 0);
            out.cmeasure = true;
        }
        return out;
    }

    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    CircuitSpec spec_;
};

void write_gate(std::string &out, const GateOp &g) {
    out += g.name;
    for (auto a : g.args) out += " " + std::to_string(a);
    out += '\n';
}

} // namespace

CircuitSpec parse_circuit(std::string_view text) { return Parser(tokenize(text)).run(); }

std::string serialize_circuit(const CircuitSpec &spec) {
    std::string out = "qubits " + std::to_string(spec.num_qubits) + "\n";
    for (const auto &ins : spec.instructions) {
        std::visit(
            [&](const auto &op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, InitOp>) {
                    out += op.kind == InitOp::Kind::Uniform
                               ? std::string("init uniform\n")
                               : "init basis " + std::to_string(op.index) + "\n";
                } else if constexpr (std::is_same_v<T, GateOp>) {
                    write_gate(out, op);
                } else {
                    out += "duality " + std::to_string(op.slits.size()) + "\nweights";
                    for (double w : op.weights) out += " " + format_real(w);
                    out += '\n';
                    for (std::size_t i = 0; i < op.slits.size(); ++i) {
                        if (op.slits[i].empty()) continue;
                        out += "slit " + std::to_string(i) + "\n";
                        for (const auto &g : op.slits[i]) write_gate(out, g);
                    }
                    out += "endduality\n";
                    if (op.cmeasure) out += "cmeasure\n";
                }
            },
            ins);
    }
    return out;
}

StateVector apply_gate(const StateVector &state, const GateOp &gate) {
    if (auto it = kSingleQubit.find(gate.name); it != kSingleQubit.end()) {
        return apply_operator(state, it->second(), {gate.args.at(0)});
    }
    if (gate.name == "cx") {
        return controlled_apply(state, gates::X(), {gate.args.at(1)}, gate.args.at(0), 1);
    }
    if (gate.name == "oracle") {
        StateVector out = state;
        out.amplitudes() = -out.amplitudes();
        for (auto i : gate.args) out[i] = -out[i];
        return out;
    }
    if (gate.name == "diffusion") {
        StateVector out = state;
        const Complex twice_mean = 2.0 * out.amplitudes().sum() / static_cast<double>(out.dim());
        out.amplitudes() = (-out.amplitudes()).array() + twice_mean;
        return out;
    }
    throw InvalidArgument("unknown gate '" + gate.name + "'");
}

Operator gate_sequence_unitary(std::size_t num_qubits, const std::vector<GateOp> &gates) {
    const std::size_t d = std::size_t{1} << num_qubits;
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t c = 0; c < d; ++c) {
        StateVector col = basis_state(num_qubits, c);
        for (const auto &g : gates) col = apply_gate(col, g);
        m.col(static_cast<Eigen::Index>(c)) = col.amplitudes();
    }
    return Operator(std::move(m));
}

DualityGate block_gate(std::size_t num_qubits, const DualityBlock &block) {
    std::vector<Operator> unitaries;
    unitaries.reserve(block.slits.size());
    for (const auto &slit : block.slits) {
        unitaries.push_back(gate_sequence_unitary(num_qubits, slit));
    }
    return DualityGate(SlitWeights(block.weights), std::move(unitaries));
}

SimulationResult simulate(const CircuitSpec &spec, Rng &rng) {
    SimulationResult result{basis_state(spec.num_qubits, 0), {}, false};
    for (const auto &ins : spec.instructions) {
        if (const auto *init = std::get_if<InitOp>(&ins)) {
            result.state = init->kind == InitOp::Kind::Uniform
                               ? uniform_state(spec.num_qubits)
                               : basis_state(spec.num_qubits, init->index);
        } else if (const auto *g = std::get_if<GateOp>(&ins)) {
            result.state = apply_gate(result.state, *g);
        } else {
            const auto &block = std::get<DualityBlock>(ins);
            const DualityGate gate = block_gate(spec.num_qubits, block);
            if (!block.cmeasure) {
                result.state = apply_duality_gate(result.state, gate);
                continue;
            }
            const DilationCircuit circuit = build_dilation(gate);
            const StateVector full = run_dilation(result.state, circuit);
            const double p0 = aux_zero_probability(full, spec.num_qubits);
            MeasurementOutcome outcome = conditional_measure(full, spec.num_qubits, rng);
            if (auto *hit = std::get_if<Hit>(&outcome)) {
                result.measurements.push_back({true, hit->sampled_index, p0});
                result.state = std::move(hit->post_state);
            } else {
                result.measurements.push_back({false, std::nullopt, p0});
                result.state = std::move(std::get<Miss>(outcome).post_state);
                result.stopped_on_miss = true;
                return result;
            }
        }
    }
    return result;
}

} // namespace dualsim::cli
