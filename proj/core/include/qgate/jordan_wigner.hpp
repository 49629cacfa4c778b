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
#include <vector>

#include "qgate/hamiltonian.hpp"

namespace qgate {

/// One creation (dagger = true) or annihilation operator on a site. Site j
/// maps to qubit j, occupation |1>, with a_j = (X_j + i Y_j)/2 times Z on
/// every site below j.
struct LadderOp {
    std::size_t site = 0;
    bool dagger = false;
};

/// Pauli expansion of coefficient * (product of ops, leftmost applied last).
/// Strings are unsigned; phases are folded into the coefficients.
PauliTermList jordan_wigner(std::size_t n_sites, const std::vector<LadderOp> &ops,
                            std::complex<double> coefficient = 1.0);

/// h O + conj(h) O^dagger, or h O alone when O is self-adjoint. The result
/// has real coefficients.
PauliTermList jordan_wigner_hermitian(std::size_t n_sites, const std::vector<LadderOp> &ops,
                                      std::complex<double> h);

/// h a+_p a_q + h.c. (p != q), or h n_p (p == q).
PauliTermList jordan_wigner_one_body(std::size_t n_sites, std::size_t p, std::size_t q, std::complex<double> h);

/// h a+_p a+_q a_r a_s + h.c. with p >= q >= r >= s.
PauliTermList jordan_wigner_two_body(std::size_t n_sites, std::size_t p, std::size_t q, std::size_t r,
                                     std::size_t s, std::complex<double> h);

/// Number of Z-only sites in the strings of a two-body term with p > q > r > s.
inline std::size_t jordan_wigner_z_count(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return (p - q - 1) + (r - s - 1);
}

}  // namespace qgate
