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
 * Exception types thrown by the library. Every error carries a short
 * machine-readable kind string that the CLI echoes on failure.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualsim {

class Error : public std::runtime_error {
  public:
    Error(std::string kind, const std::string &message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    [[nodiscard]] const std::string &kind() const noexcept { return kind_; }

  private:
    std::string kind_;
};

/// Operand dimensions or qubit counts do not agree.
class DimensionMismatch : public Error {
  public:
    explicit DimensionMismatch(const std::string &message)
        : Error("dimension_mismatch", message) {}
};

class InvalidArgument : public Error {
  public:
    explicit InvalidArgument(const std::string &message)
        : Error("invalid_argument", message) {}
};

/// A measurement branch was selected whose norm is too small to normalize.
class DegenerateBranch : public Error {
  public:
    explicit DegenerateBranch(const std::string &message)
        : Error("degenerate_branch", message) {}
};

class NotNormal : public Error {
  public:
    explicit NotNormal(const std::string &message)
        : Error("not_normal", message) {}
};

/// Success probability is zero, so the expected number of cycles diverges.
class InfiniteExpectation : public Error {
  public:
    explicit InfiniteExpectation(const std::string &message)
        : Error("infinite_expectation", message) {}
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::string token, const std::string &message)
        : Error("parse_error", "line " + std::to_string(line) + ": " +
                                   message + " (near '" + token + "')"),
          line_(line), token_(std::move(token)) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string &token() const noexcept { return token_; }

  private:
    std::size_t line_;
    std::string token_;
};

} // namespace dualsim
