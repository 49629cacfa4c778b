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

#include "qgate/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qgate/errors.hpp"

namespace qgate {

void SparseHamiltonian::add(std::uint64_t row, std::uint64_t col, std::complex<double> value, double tolerance) {
    if (row >= dimension() || col >= dimension()) {
        throw DomainError("entry (" + std::to_string(row) + ", " + std::to_string(col) + ") outside a " +
                          std::to_string(dimension()) + "-dimensional space");
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw DomainError("entry value is not finite");
    }
    if (row == col && std::abs(value.imag()) > tolerance) {
        throw DomainError("diagonal entry " + std::to_string(row) + " is not real");
    }
    std::complex<double> canonical = value;
    if (row > col) {
        std::swap(row, col);
        canonical = std::conj(value);
    }
    for (auto &e : entries_) {
        if (e.row == row && e.col == col) {
            if (std::abs(e.value - canonical) > tolerance) {
                throw DomainError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                                  ") conflicts with its Hermitian mirror");
            }
            return;
        }
    }
    entries_.push_back({row, col, row == col ? std::complex<double>(canonical.real(), 0.0) : canonical});
}

Eigen::VectorXd SparseHamiltonian::diagonal() const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension()));
    for (const auto &e : entries_) {
        if (e.row == e.col) {
            d[static_cast<Eigen::Index>(e.row)] = e.value.real();
        }
    }
    return d;
}

std::vector<SparseEntry> SparseHamiltonian::upper_pairs() const {
    std::vector<SparseEntry> out;
    for (const auto &e : entries_) {
        if (e.row != e.col && e.value != std::complex<double>(0.0)) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    return out;
}

Eigen::MatrixXcd SparseHamiltonian::to_dense(std::size_t max_qubits) const {
    if (num_qubits_ > max_qubits) {
        throw ResourceError("dense Hamiltonian of " + std::to_string(num_qubits_) + " qubits exceeds the cap");
    }
    const auto dim = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &e : entries_) {
        const auto r = static_cast<Eigen::Index>(e.row), c = static_cast<Eigen::Index>(e.col);
        h(r, c) = e.value;
        h(c, r) = std::conj(e.value);
    }
    return h;
}

SparseHamiltonian SparseHamiltonian::from_dense(const Eigen::MatrixXcd &h, double tolerance) {
    const auto dim = static_cast<std::uint64_t>(h.rows());
    if (h.rows() != h.cols() || dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("dense Hamiltonian must be square with power-of-two size");
    }
    std::size_t n = 0;
    while ((std::uint64_t{1} << n) < dim) {
        ++n;
    }
    SparseHamiltonian out(n);
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        for (Eigen::Index c = r; c < h.cols(); ++c) {
            if (std::abs(h(r, c) - std::conj(h(c, r))) > tolerance) {
                throw DomainError("dense Hamiltonian is not Hermitian");
            }
            if (std::abs(h(r, c)) > 0.0) {
                out.add(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c), h(r, c), tolerance);
            }
        }
    }
    return out;
}

void PauliTermList::check() const {
    for (const auto &t : terms) {
        if (t.string.num_qubits() != num_qubits()) {
            throw DimensionError("Pauli terms of different widths");
        }
        if (!std::isfinite(t.coefficient.real()) || !std::isfinite(t.coefficient.imag())) {
            throw DomainError("Pauli coefficient is not finite");
        }
    }
}

bool PauliTermList::is_hermitian(double tolerance) const {
    check();
    if (num_qubits() <= 10) {
        const Eigen::MatrixXcd h = to_dense();
        return h.size() == 0 || (h - h.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
    }
    for (const auto &t : terms) {
        const std::complex<double> c = t.coefficient * t.string.phase();
        if (std::abs(c.imag()) > tolerance) {
            return false;
        }
    }
    return true;
}

Eigen::MatrixXcd PauliTermList::to_dense(std::size_t max_qubits) const {
    check();
    const auto dim = Eigen::Index{1} << num_qubits();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : terms) {
        h += t.coefficient * qgate::to_dense(t.string, max_qubits);
    }
    return h;
}

SparseHamiltonian random_sparse_hermitian(std::size_t num_qubits, std::size_t offdiag_pairs, std::uint64_t seed,
                                          bool complex_offdiag) {
    SparseHamiltonian h(num_qubits);
    const std::uint64_t dim = h.dimension();
    if (offdiag_pairs > dim * (dim - 1) / 2) {
        throw DomainError("more off-diagonal pairs requested than exist");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> idx(0, dim - 1);
    for (std::uint64_t k = 0; k < dim; ++k) {
        h.add(k, k, u(rng));
    }
    std::set<std::pair<std::uint64_t, std::uint64_t>> used;
    while (used.size() < offdiag_pairs) {
        std::uint64_t i = idx(rng), j = idx(rng);
        if (i == j) {
            continue;
        }
        if (i > j) {
            std::swap(i, j);
        }
        if (!used.insert({i, j}).second) {
            continue;
        }
        const double re = u(rng);
        const double im = complex_offdiag ? u(rng) : 0.0;
        h.add(i, j, {re, im});
    }
    return h;
}

}  // namespace qgate
