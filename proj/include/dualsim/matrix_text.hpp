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
 * Text encoding of operators and numbers.
 *
 * Matrix format: the first non-blank line holds the dimension d, followed by
 * d lines of d whitespace-separated complex literals. A literal is `a`,
 * `a+bi`, `a-bi` or `bi`, with decimal mantissas and optional exponents.
 * Lines starting with `#` are ignored. Parsing and printing never consult
 * the C locale.
 */
#pragma once

#include <string>
#include <string_view>

#include "dualsim/statevec.hpp"

namespace dualsim {

/// Shortest decimal that round-trips to the same double.
std::string format_real(double value);
/// `a+bi` / `a-bi`, both parts always present.
std::string format_complex(Complex value);

/// Throws ParseError on malformed input.
Complex parse_complex(std::string_view token);

Operator parse_matrix_text(std::string_view text);
std::string format_matrix_text(const Operator &op);

} // namespace dualsim
