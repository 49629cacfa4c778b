// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qgate {

/// Operand sizes disagree (qubit counts, matrix dimensions).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured resource cap (dense-oracle qubit limit).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the operation's domain (bad index, non-finite angle,
/// non-Hermitian input, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A forced measurement branch has Born probability below the postselection floor.
struct PostselectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed. `line` is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
    ParseError(const std::string &what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line(line) {
    }
    std::size_t line;
};

/// Valid input that this implementation deliberately does not handle.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A program violates the instruction-set rules.
struct ProgramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal bookkeeping reached a state that indicates a bug (e.g. a
/// stabilizer generator acquired an odd power of i).
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qgate
