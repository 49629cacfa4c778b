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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qgate {

/// Largest register the dense-matrix oracles will build by default (2^12 x 2^12).
inline constexpr std::size_t kDefaultOracleQubits = 12;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter letter);
PauliLetter pauli_letter_from_char(char c);

/// An N-qubit Pauli operator i^k * P_0 (x) P_1 (x) ... (x) P_{N-1} stored in
/// symplectic form. Per qubit (x, z) = (0,0) I, (1,0) X, (1,1) Y, (0,1) Z; the
/// letter Y is the Hermitian Y matrix, not XZ. Qubit 0 is the leftmost letter
/// in text form and the most significant bit of a basis-state index.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(std::size_t num_qubits);

    /// Parses text such as "ZIXZX", "+iXY", "-ZZ", "-1X" or "_X_" ('_' == I).
    static PauliString from_str(std::string_view text);
    static PauliString single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter);

    std::size_t num_qubits() const {
        return num_qubits_;
    }

    PauliLetter letter(std::size_t qubit) const;
    void set_letter(std::size_t qubit, PauliLetter letter);
    bool x(std::size_t qubit) const;
    bool z(std::size_t qubit) const;

    /// Power k of the global i^k prefactor, in [0, 4).
    unsigned phase_exponent() const {
        return phase_;
    }
    void set_phase_exponent(unsigned k) {
        phase_ = k & 3u;
    }
    std::complex<double> phase() const;

    /// Number of non-identity letters.
    std::size_t weight() const;
    /// True when every letter is I (the phase is ignored).
    bool is_identity() const;
    /// Indices of the non-identity letters, ascending.
    std::vector<std::size_t> support() const;

    /// Letters-only copy (phase reset to 0).
    PauliString unsigned_copy() const;

    std::string str() const;
    /// Letters only, without the phase prefix.
    std::string letters() const;

    PauliString &operator*=(const PauliString &rhs);
    friend PauliString operator*(PauliString lhs, const PauliString &rhs) {
        lhs *= rhs;
        return lhs;
    }
    bool operator==(const PauliString &other) const = default;

    /// this (x) rhs; rhs occupies the new trailing qubits.
    PauliString tensor(const PauliString &rhs) const;
    /// Copy with `count` identity qubits appended.
    PauliString extended(std::size_t count) const;
    /// Copy with the given qubit deleted; higher qubits shift down by one.
    PauliString without_qubit(std::size_t qubit) const;

    std::span<const std::uint64_t> x_words() const {
        return xs_;
    }
    std::span<const std::uint64_t> z_words() const {
        return zs_;
    }

   private:
    void check_index(std::size_t qubit) const;

    std::size_t num_qubits_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
    unsigned phase_ = 0;
};

/// Pauli action on basis indices: P|c> = i^k * (-1)^popcount(c & z_mask) |c ^ x_mask>,
/// with k = phase_exponent + (number of Y letters). Requires num_qubits < 64.
struct BasisMasks {
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
    unsigned i_power = 0;
};
BasisMasks basis_masks(const PauliString &p);

/// True iff the symplectic inner product of a and b vanishes.
bool commutes(const PauliString &a, const PauliString &b);

/// Dense 2^n x 2^n realization of p.
Eigen::MatrixXcd to_dense(const PauliString &p, std::size_t max_qubits = kDefaultOracleQubits);

/// cos(phi/2) I + i sin(phi/2) p, i.e. exp(i phi p / 2) for Hermitian p.
Eigen::MatrixXcd pauli_rotation_matrix(const PauliString &p, double phi,
                                       std::size_t max_qubits = kDefaultOracleQubits);

struct WeightedPauli {
    std::complex<double> coefficient;
    PauliString string;
};

}  // namespace qgate
