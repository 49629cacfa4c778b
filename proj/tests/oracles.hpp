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

// Dense reference constructions shared by the tests. Nothing here calls into
// the library under test.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qgate::oracle {

using cd = std::complex<double>;

inline Eigen::Matrix2cd letter(char c) {
    Eigen::Matrix2cd m;
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m.setIdentity();
    }
    return m;
}

/// Kronecker product of letters; the first letter is the most significant qubit.
inline Eigen::MatrixXcd pauli(const std::string &letters) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : letters) {
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, letter(c)).eval();
        m = next;
    }
    return m;
}

inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a) {
    return a.exp();
}

/// exp(-i h t).
inline Eigen::MatrixXcd evolve(const Eigen::MatrixXcd &h, double t) {
    return expm(cd(0, -t) * h);
}

/// exp(i angle P / 2).
inline Eigen::MatrixXcd rotation(const std::string &letters, double angle) {
    return expm(cd(0, angle / 2) * pauli(letters));
}

inline bool bit(std::uint64_t index, std::size_t q, std::size_t n) {
    return (index >> (n - 1 - q)) & 1u;
}

/// Applies u (a full 2^n operator acting trivially on the controls) only on
/// basis states whose control bits equal the keys.
inline Eigen::MatrixXcd controlled(std::size_t n, const std::vector<std::pair<std::size_t, bool>> &controls,
                                   const Eigen::MatrixXcd &u) {
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        bool match = true;
        for (auto [q, key] : controls) {
            match = match && bit(static_cast<std::uint64_t>(k), q, n) == key;
        }
        p(k, k) = match ? 1.0 : 0.0;
    }
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
    return (id - p) + p * u;
}

/// Single-qubit matrix g placed on qubit q of n.
inline Eigen::MatrixXcd on_qubit(std::size_t n, std::size_t q, const Eigen::Matrix2cd &g) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, k == q ? g : Eigen::Matrix2cd::Identity()).eval();
        m = next;
    }
    return m;
}

inline Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

/// |i><j| on n qubits.
inline Eigen::MatrixXcd ketbra(std::uint64_t i, std::uint64_t j, std::size_t n) {
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    return m;
}

inline double max_abs(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (a - b).cwiseAbs().maxCoeff();
}

/// max |a - e^{ig} b| with g fixed by the largest entry of b.
inline double max_abs_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::Index r = 0, c = 0;
    b.cwiseAbs().maxCoeff(&r, &c);
    const cd ph = a(r, c) / b(r, c);
    return (a - (ph / std::abs(ph)) * b).cwiseAbs().maxCoeff();
}

}  // namespace qgate::oracle
