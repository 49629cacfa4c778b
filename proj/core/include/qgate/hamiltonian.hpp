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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgate/pauli.hpp"

namespace qgate {

struct SparseEntry {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    std::complex<double> value;
};

/// Hermitian operator on 2^n basis states given by its nonzero entries. Only
/// one of each (i, j) / (j, i) pair needs to be listed; the mirror is implied.
class SparseHamiltonian {
   public:
    SparseHamiltonian() = default;
    explicit SparseHamiltonian(std::size_t num_qubits) : num_qubits_(num_qubits) {
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::uint64_t dimension() const {
        return std::uint64_t{1} << num_qubits_;
    }

    /// Adds h at (row, col). Diagonal values must be real to 1e-12; when the
    /// mirror entry already exists it must equal conj(h) to `tolerance`.
    void add(std::uint64_t row, std::uint64_t col, std::complex<double> value, double tolerance = 1e-12);

    /// Diagonal (length 2^n, real parts).
    Eigen::VectorXd diagonal() const;
    /// Off-diagonal pairs (i < j) in lexicographic order, value = H[i][j].
    std::vector<SparseEntry> upper_pairs() const;
    Eigen::MatrixXcd to_dense(std::size_t max_qubits = kDefaultOracleQubits) const;

    static SparseHamiltonian from_dense(const Eigen::MatrixXcd &h, double tolerance = 1e-12);

   private:
    std::size_t num_qubits_ = 0;
    // Canonical storage: row <= col.
    std::vector<SparseEntry> entries_;
};

enum class TermOrdering : std::uint8_t { AsGiven, Random };

/// Weighted Pauli strings sum_m c_m P_m.
struct PauliTermList {
    std::vector<WeightedPauli> terms;
    TermOrdering ordering = TermOrdering::AsGiven;
    std::uint64_t seed = 0;

    std::size_t num_qubits() const {
        return terms.empty() ? 0 : terms.front().string.num_qubits();
    }
    /// Throws if strings differ in width or a coefficient is not finite.
    void check() const;
    bool is_hermitian(double tolerance = 1e-12) const;
    Eigen::MatrixXcd to_dense(std::size_t max_qubits = kDefaultOracleQubits) const;
};

/// Seeded random sparse Hermitian matrix: a random real diagonal plus
/// `offdiag_pairs` distinct random real off-diagonal pairs, values in [-1, 1].
SparseHamiltonian random_sparse_hermitian(std::size_t num_qubits, std::size_t offdiag_pairs, std::uint64_t seed,
                                          bool complex_offdiag = false);

}  // namespace qgate
