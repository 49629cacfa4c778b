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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgate/algorithms.hpp"
#include "qgate/compiler.hpp"
#include "qgate/hamiltonian.hpp"
#include "qgate/program.hpp"

namespace qgate::io {

inline constexpr int kProgramSchemaVersion = 1;

enum class InputFormat : std::uint8_t { MatrixMarket, Json, PauliText };

/// By extension: .mtx / .mm are MatrixMarket, .json is the sparse JSON form,
/// anything else is a Pauli term list.
InputFormat detect_format(const std::filesystem::path &path);

/// Coordinate MatrixMarket, field real/integer/complex, symmetry
/// general/symmetric/hermitian. The dimension must be a power of two.
SparseHamiltonian read_matrix_market(std::istream &in);

/// {"dimension": d, "entries": [[row, col, re], [row, col, re, im], ...]},
/// 0-based indices; mirror entries are optional.
SparseHamiltonian read_sparse_json(std::istream &in);

/// One "coeff string" per line; '#' starts a comment.
PauliTermList read_pauli_text(std::istream &in);

/// Either representation of a Hamiltonian read from disk.
struct HamiltonianInput {
    InputFormat format = InputFormat::PauliText;
    std::optional<SparseHamiltonian> sparse;
    std::optional<PauliTermList> pauli;

    std::size_t num_qubits() const;
};
HamiltonianInput read_hamiltonian(const std::filesystem::path &path);

std::string program_to_json(const QGateProgram &program);
QGateProgram program_from_json(std::string_view text);
QGateProgram read_program(const std::filesystem::path &path);

std::string cost_to_json(const CostReport &report);
std::string cost_to_csv(const CostReport &report);

/// Columns: tau,order,one_minus_F,frobenius. one_minus_F is 1 minus the mean
/// basis-state fidelity for scaling rows.
std::string scaling_csv(const std::vector<ScalingRow> &rows);
std::string fidelity_csv(const std::vector<FidelityPoint> &points);
/// Columns: bitstring,count.
std::string histogram_csv(const PhaseEstimate &estimate);
/// Columns: delta,theta_hat,theta_exact.
std::string sweep_csv(const std::vector<SweepRow> &rows);

/// Reads "index,re,im" rows (header optional) into a normalized state.
StateVector read_state_csv(std::istream &in);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
    std::string tool_version;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
};
std::string manifest_to_json(const RunManifest &manifest);

/// Writes to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path &path, std::string_view content);

/// Shortest text that parses back to the same double.
std::string format_double(double value);

}  // namespace qgate::io
