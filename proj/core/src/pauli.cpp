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

#include "qgate/pauli.hpp"

#include <bit>
#include <cmath>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) {
    return (n + kWordBits - 1) / kWordBits;
}

const std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

char to_char(PauliLetter letter) {
    switch (letter) {
        case PauliLetter::I:
            return 'I';
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Y:
            return 'Y';
        case PauliLetter::Z:
            return 'Z';
    }
    return '?';
}

PauliLetter pauli_letter_from_char(char c) {
    switch (c) {
        case 'I':
        case '_':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
        default:
            throw ParseError(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliString::PauliString(std::size_t num_qubits)
    : num_qubits_(num_qubits), xs_(word_count(num_qubits), 0), zs_(word_count(num_qubits), 0) {
}

PauliString PauliString::from_str(std::string_view text) {
    unsigned phase = 0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            phase = 2;
        }
        ++pos;
    }
    if (pos < text.size() && (text[pos] == 'i' || text[pos] == '1')) {
        if (text[pos] == 'i') {
            phase += 1;
        }
        ++pos;
    }
    PauliString result(text.size() - pos);
    for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
        result.set_letter(q, pauli_letter_from_char(text[pos]));
    }
    result.phase_ = phase & 3u;
    return result;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, PauliLetter letter) {
    PauliString p(num_qubits);
    p.set_letter(qubit, letter);
    return p;
}

void PauliString::check_index(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw DomainError("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(num_qubits_) + "-qubit Pauli string");
    }
}

PauliLetter PauliString::letter(std::size_t qubit) const {
    check_index(qubit);
    const bool xb = (xs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
    const bool zb = (zs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
    if (xb) {
        return zb ? PauliLetter::Y : PauliLetter::X;
    }
    return zb ? PauliLetter::Z : PauliLetter::I;
}

void PauliString::set_letter(std::size_t qubit, PauliLetter letter) {
    check_index(qubit);
    const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
    auto &xw = xs_[qubit / kWordBits];
    auto &zw = zs_[qubit / kWordBits];
    const bool xb = letter == PauliLetter::X || letter == PauliLetter::Y;
    const bool zb = letter == PauliLetter::Z || letter == PauliLetter::Y;
    xw = xb ? (xw | bit) : (xw & ~bit);
    zw = zb ? (zw | bit) : (zw & ~bit);
}

bool PauliString::x(std::size_t qubit) const {
    check_index(qubit);
    return (xs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
}

bool PauliString::z(std::size_t qubit) const {
    check_index(qubit);
    return (zs_[qubit / kWordBits] >> (qubit % kWordBits)) & 1u;
}

std::complex<double> PauliString::phase() const {
    return kIPowers[phase_];
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        w += static_cast<std::size_t>(std::popcount(xs_[k] | zs_[k]));
    }
    return w;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

std::vector<std::size_t> PauliString::support() const {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        if (letter(q) != PauliLetter::I) {
            out.push_back(q);
        }
    }
    return out;
}

PauliString PauliString::unsigned_copy() const {
    PauliString p = *this;
    p.phase_ = 0;
    return p;
}

std::string PauliString::letters() const {
    std::string s;
    s.reserve(num_qubits_);
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        s.push_back(to_char(letter(q)));
    }
    return s;
}

std::string PauliString::str() const {
    static const char *const kPrefix[4] = {"+", "+i", "-", "-i"};
    return kPrefix[phase_] + letters();
}

PauliString &PauliString::operator*=(const PauliString &rhs) {
    if (rhs.num_qubits_ != num_qubits_) {
        throw DimensionError("Pauli product of " + std::to_string(num_qubits_) + "- and " +
                             std::to_string(rhs.num_qubits_) + "-qubit strings");
    }
    // Per-site i-powers: XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
    int log_i = 0;
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        const std::uint64_t ax = xs_[k], az = zs_[k], bx = rhs.xs_[k], bz = rhs.zs_[k];
        const std::uint64_t a_x = ax & ~az, a_y = ax & az, a_z = ~ax & az;
        const std::uint64_t b_x = bx & ~bz, b_y = bx & bz, b_z = ~bx & bz;
        const std::uint64_t plus = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
        const std::uint64_t minus = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
        log_i += std::popcount(plus) - std::popcount(minus);
        xs_[k] = ax ^ bx;
        zs_[k] = az ^ bz;
    }
    phase_ = static_cast<unsigned>(((static_cast<int>(phase_ + rhs.phase_) + log_i) % 4 + 4) % 4);
    return *this;
}

PauliString PauliString::tensor(const PauliString &rhs) const {
    PauliString out(num_qubits_ + rhs.num_qubits_);
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        out.set_letter(q, letter(q));
    }
    for (std::size_t q = 0; q < rhs.num_qubits_; ++q) {
        out.set_letter(num_qubits_ + q, rhs.letter(q));
    }
    out.phase_ = (phase_ + rhs.phase_) & 3u;
    return out;
}

PauliString PauliString::extended(std::size_t count) const {
    PauliString out = *this;
    out.num_qubits_ += count;
    out.xs_.resize(word_count(out.num_qubits_), 0);
    out.zs_.resize(word_count(out.num_qubits_), 0);
    return out;
}

PauliString PauliString::without_qubit(std::size_t qubit) const {
    check_index(qubit);
    PauliString out(num_qubits_ - 1);
    for (std::size_t q = 0, r = 0; q < num_qubits_; ++q) {
        if (q != qubit) {
            out.set_letter(r++, letter(q));
        }
    }
    out.phase_ = phase_;
    return out;
}

BasisMasks basis_masks(const PauliString &p) {
    const std::size_t n = p.num_qubits();
    if (n >= 64) {
        throw ResourceError("basis masks need fewer than 64 qubits");
    }
    BasisMasks m;
    unsigned ys = 0;
    for (std::size_t q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        if (p.x(q)) {
            m.x_mask |= bit;
        }
        if (p.z(q)) {
            m.z_mask |= bit;
        }
        if (p.x(q) && p.z(q)) {
            ++ys;
        }
    }
    m.i_power = (p.phase_exponent() + ys) & 3u;
    return m;
}

bool commutes(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("commutation test of " + std::to_string(a.num_qubits()) + "- and " +
                             std::to_string(b.num_qubits()) + "-qubit strings");
    }
    const auto ax = a.x_words(), az = a.z_words(), bx = b.x_words(), bz = b.z_words();
    unsigned parity = 0;
    for (std::size_t k = 0; k < ax.size(); ++k) {
        parity ^= static_cast<unsigned>(std::popcount((ax[k] & bz[k]) ^ (az[k] & bx[k]))) & 1u;
    }
    return parity == 0;
}

Eigen::MatrixXcd to_dense(const PauliString &p, std::size_t max_qubits) {
    const std::size_t n = p.num_qubits();
    if (n > max_qubits) {
        throw ResourceError("dense realization of " + std::to_string(n) + " qubits exceeds the " +
                            std::to_string(max_qubits) + "-qubit oracle limit");
    }
    const BasisMasks m = basis_masks(p);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const unsigned sign = static_cast<unsigned>(std::popcount(col & m.z_mask)) & 1u;
        out(static_cast<Eigen::Index>(col ^ m.x_mask), static_cast<Eigen::Index>(col)) =
            kIPowers[(m.i_power + 2 * sign) & 3u];
    }
    return out;
}

Eigen::MatrixXcd pauli_rotation_matrix(const PauliString &p, double phi, std::size_t max_qubits) {
    if (!std::isfinite(phi)) {
        throw DomainError("rotation angle must be finite");
    }
    Eigen::MatrixXcd out = to_dense(p, max_qubits) * std::complex<double>(0.0, std::sin(phi / 2));
    out.diagonal().array() += std::cos(phi / 2);
    return out;
}

}  // namespace qgate
