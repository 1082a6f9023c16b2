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
#include "dualsim/matrix_text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <vector>

#include "dualsim/errors.hpp"

namespace dualsim {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

// from_chars rejects a leading '+', which we allow on both parts.
bool parse_double(std::string_view s, double &out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

} // namespace

std::string format_real(double value) {
    if (value == 0.0) value = 0.0; // drop the sign of -0
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::string format_complex(Complex value) {
    std::string re = format_real(value.real());
    double im = value.imag();
    if (im == 0.0) im = 0.0;
    if (std::signbit(im)) return re + "-" + format_real(-im) + "i";
    return re + "+" + format_real(im) + "i";
}

Complex parse_complex(std::string_view token) {
    const std::string tok(token);
    auto fail = [&]() -> Complex { throw ParseError(0, tok, "malformed complex literal"); };
    if (token.empty()) return fail();
    if (token.back() != 'i') {
        double re = 0;
        if (!parse_double(token, re)) return fail();
        return {re, 0.0};
    }
    token.remove_suffix(1);
    // The split point is the last sign that is not the leading sign and not
    // part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = token.size(); k-- > 1;) {
        if ((token[k] == '+' || token[k] == '-') && token[k - 1] != 'e' &&
            token[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    double im = 0.0;
    std::string_view im_part = token;
    if (split != std::string_view::npos) {
        if (!parse_double(token.substr(0, split), re)) return fail();
        im_part = token.substr(split);
    }
    if (im_part == "+" || im_part.empty()) {
        im = 1.0;
    } else if (im_part == "-") {
        im = -1.0;
    } else if (im_part.front() == '-') {
        if (!parse_double(im_part.substr(1), im)) return fail();
        im = -im;
    } else if (!parse_double(im_part, im)) {
        return fail();
    }
    return {re, im};
}

Operator parse_matrix_text(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        lines.emplace_back(line_no, line);
    }
    if (lines.empty()) throw ParseError(1, "", "empty matrix file");

    const auto header = split_ws(lines[0].second);
    std::size_t dim = 0;
    {
        auto tok = header[0];
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), dim);
        if (header.size() != 1 || ec != std::errc() || ptr != tok.data() + tok.size() ||
            dim == 0) {
            throw ParseError(lines[0].first, std::string(tok),
                             "expected a positive integer dimension");
        }
    }
    if (lines.size() != dim + 1) {
        throw ParseError(lines.back().first, "",
                         "expected " + std::to_string(dim) + " matrix rows, found " +
                             std::to_string(lines.size() - 1));
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        const auto &[no, line] = lines[r + 1];
        const auto tokens = split_ws(line);
        if (tokens.size() != dim) {
            throw ParseError(no, std::string(line),
                             "expected " + std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            try {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    parse_complex(tokens[c]);
            } catch (const ParseError &) {
                throw ParseError(no, std::string(tokens[c]), "malformed complex literal");
            }
        }
    }
    return Operator(std::move(m));
}

std::string format_matrix_text(const Operator &op) {
    std::string out = std::to_string(op.dim()) + "\n";
    for (std::size_t r = 0; r < op.dim(); ++r) {
        for (std::size_t c = 0; c < op.dim(); ++c) {
            if (c) out += ' ';
            out += format_complex(op(r, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace dualsim
