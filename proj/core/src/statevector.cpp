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

#include "qgate/statevector.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
const cd kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

Eigen::Matrix2cd Gate1::matrix() const {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H:
            m << r, r, r, -r;
            break;
        case GateKind::S:
            m << 1, 0, 0, kI;
            break;
        case GateKind::Sdg:
            m << 1, 0, 0, -kI;
            break;
        case GateKind::X:
            m << 0, 1, 1, 0;
            break;
        case GateKind::Y:
            m << 0, -kI, kI, 0;
            break;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            break;
        case GateKind::RX: {
            const double c = std::cos(angle / 2), s = std::sin(angle / 2);
            m << c, -kI * s, -kI * s, c;
            break;
        }
        case GateKind::RZ:
            m << std::exp(-kI * (angle / 2)), 0, 0, std::exp(kI * (angle / 2));
            break;
        case GateKind::Phase:
            m << 1, 0, 0, std::exp(kI * angle);
            break;
    }
    return m;
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits >= 40) {
        throw ResourceError("state vector of " + std::to_string(num_qubits) + " qubits");
    }
    amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
    amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
    StateVector sv(num_qubits);
    if (index >= sv.dimension()) {
        throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                          std::to_string(num_qubits) + " qubits");
    }
    sv.amps_[0] = 0.0;
    sv.amps_[static_cast<Eigen::Index>(index)] = 1.0;
    return sv;
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes, double tolerance) {
    const auto dim = static_cast<std::uint64_t>(amplitudes.size());
    if (dim == 0 || !std::has_single_bit(dim)) {
        throw DimensionError("amplitude vector length " + std::to_string(dim) + " is not a power of two");
    }
    if (std::abs(amplitudes.norm() - 1.0) > tolerance) {
        throw DomainError("amplitude vector is not normalized");
    }
    StateVector sv;
    sv.num_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
    sv.amps_ = std::move(amplitudes);
    return sv;
}

StateVector StateVector::random(std::size_t num_qubits, std::mt19937_64 &rng) {
    StateVector sv(num_qubits);
    std::normal_distribution<double> g;
    for (Eigen::Index k = 0; k < sv.amps_.size(); ++k) {
        sv.amps_[k] = cd(g(rng), g(rng));
    }
    sv.amps_.normalize();
    return sv;
}

void StateVector::check_qubit(std::size_t qubit) const {
    if (qubit >= num_qubits_) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) +
                          "-qubit state");
    }
}

void StateVector::apply(const Gate1 &gate, std::size_t qubit) {
    apply_matrix(gate.matrix(), qubit);
}

void StateVector::apply_matrix(const Eigen::Matrix2cd &m, std::size_t qubit) {
    apply_controlled({}, qubit, m);
}

void StateVector::apply_controlled(const std::vector<Control> &controls, std::size_t target,
                                   const Eigen::Matrix2cd &m) {
    check_qubit(target);
    std::uint64_t cmask = 0, cval = 0;
    for (const auto &c : controls) {
        check_qubit(c.qubit);
        if (c.qubit == target || (cmask & bit_of(c.qubit))) {
            throw DomainError("control/target qubits must be distinct");
        }
        cmask |= bit_of(c.qubit);
        if (c.key) {
            cval |= bit_of(c.qubit);
        }
    }
    const std::uint64_t tb = bit_of(target);
    const auto dim = static_cast<std::uint64_t>(amps_.size());
    for (std::uint64_t i0 = 0; i0 < dim; ++i0) {
        if ((i0 & tb) || (i0 & cmask) != cval) {
            continue;
        }
        const auto a = static_cast<Eigen::Index>(i0), b = static_cast<Eigen::Index>(i0 | tb);
        const cd v0 = amps_[a], v1 = amps_[b];
        amps_[a] = m(0, 0) * v0 + m(0, 1) * v1;
        amps_[b] = m(1, 0) * v0 + m(1, 1) * v1;
    }
}

void StateVector::apply_controlled_pauli(std::size_t control, std::size_t target, PauliLetter letter) {
    if (control == target) {
        throw DomainError("controlled Pauli needs distinct control and target");
    }
    Gate1 g;
    switch (letter) {
        case PauliLetter::X:
            g.kind = GateKind::X;
            break;
        case PauliLetter::Y:
            g.kind = GateKind::Y;
            break;
        case PauliLetter::Z:
            g.kind = GateKind::Z;
            break;
        case PauliLetter::I:
            throw DomainError("controlled Pauli letter must be X, Y or Z");
    }
    apply_controlled({{control, true}}, target, g.matrix());
}

void StateVector::apply_pauli(const PauliString &p) {
    if (p.num_qubits() != num_qubits_) {
        throw DimensionError("Pauli string has " + std::to_string(p.num_qubits()) + " qubits, state has " +
                             std::to_string(num_qubits_));
    }
    const BasisMasks m = basis_masks(p);
    Eigen::VectorXcd out(amps_.size());
    const auto dim = static_cast<std::uint64_t>(amps_.size());
    for (std::uint64_t c = 0; c < dim; ++c) {
        const unsigned sign = static_cast<unsigned>(std::popcount(c & m.z_mask)) & 1u;
        out[static_cast<Eigen::Index>(c ^ m.x_mask)] = kIPowers[(m.i_power + 2 * sign) & 3u] *
                                                        amps_[static_cast<Eigen::Index>(c)];
    }
    amps_ = std::move(out);
}

void StateVector::apply_pauli_rotation(const PauliString &p, double phi) {
    apply_controlled_pauli_rotation({}, p, phi);
}

void StateVector::apply_controlled_pauli_rotation(const std::vector<Control> &controls, const PauliString &p,
                                                  double phi) {
    if (p.num_qubits() != num_qubits_) {
        throw DimensionError("Pauli string has " + std::to_string(p.num_qubits()) + " qubits, state has " +
                             std::to_string(num_qubits_));
    }
    if (!std::isfinite(phi)) {
        throw DomainError("rotation angle must be finite");
    }
    std::uint64_t cmask = 0, cval = 0;
    for (const auto &c : controls) {
        check_qubit(c.qubit);
        if (p.letter(c.qubit) != PauliLetter::I || (cmask & bit_of(c.qubit))) {
            throw DomainError("controls must be distinct and outside the rotation's support");
        }
        cmask |= bit_of(c.qubit);
        if (c.key) {
            cval |= bit_of(c.qubit);
        }
    }
    const BasisMasks m = basis_masks(p);
    const double co = std::cos(phi / 2), si = std::sin(phi / 2);
    Eigen::VectorXcd out = amps_;
    const auto dim = static_cast<std::uint64_t>(amps_.size());
    for (std::uint64_t c = 0; c < dim; ++c) {
        if ((c & cmask) != cval) {
            continue;
        }
        const unsigned sign = static_cast<unsigned>(std::popcount(c & m.z_mask)) & 1u;
        const cd pc = kIPowers[(m.i_power + 2 * sign + 1) & 3u] * si;
        const auto src = static_cast<Eigen::Index>(c);
        const auto dst = static_cast<Eigen::Index>(c ^ m.x_mask);
        if (dst == src) {
            out[dst] = (co + pc) * amps_[src];
        } else {
            out[src] -= (1.0 - co) * amps_[src];
            out[dst] += pc * amps_[src];
        }
    }
    amps_ = std::move(out);
}

void StateVector::apply_dense(const std::vector<std::size_t> &targets, const Eigen::MatrixXcd &m,
                              const std::vector<Control> &controls) {
    const std::size_t k = targets.size();
    const Eigen::Index sub = Eigen::Index{1} << k;
    if (m.rows() != sub || m.cols() != sub) {
        throw DimensionError("dense operator size does not match " + std::to_string(k) + " targets");
    }
    std::uint64_t tmask = 0, cmask = 0, cval = 0;
    for (std::size_t t : targets) {
        check_qubit(t);
        if (tmask & bit_of(t)) {
            throw DomainError("repeated target qubit");
        }
        tmask |= bit_of(t);
    }
    for (const auto &c : controls) {
        check_qubit(c.qubit);
        if ((tmask | cmask) & bit_of(c.qubit)) {
            throw DomainError("control/target qubits must be distinct");
        }
        cmask |= bit_of(c.qubit);
        if (c.key) {
            cval |= bit_of(c.qubit);
        }
    }
    std::vector<std::uint64_t> offsets(static_cast<std::size_t>(sub), 0);
    for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(sub); ++s) {
        for (std::size_t j = 0; j < k; ++j) {
            if ((s >> (k - 1 - j)) & 1u) {
                offsets[s] |= bit_of(targets[j]);
            }
        }
    }
    Eigen::VectorXcd buf(sub);
    const auto dim = static_cast<std::uint64_t>(amps_.size());
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & tmask) || (base & cmask) != cval) {
            continue;
        }
        for (Eigen::Index s = 0; s < sub; ++s) {
            buf[s] = amps_[static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)])];
        }
        const Eigen::VectorXcd res = m * buf;
        for (Eigen::Index s = 0; s < sub; ++s) {
            amps_[static_cast<Eigen::Index>(base | offsets[static_cast<std::size_t>(s)])] = res[s];
        }
    }
}

void StateVector::multiply_scalar(std::complex<double> factor) {
    amps_ *= factor;
}

void StateVector::append_qubit(std::complex<double> a0, std::complex<double> a1) {
    const double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
    if (nrm == 0.0) {
        throw DomainError("appended qubit state has zero norm");
    }
    Eigen::VectorXcd out(amps_.size() * 2);
    for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        out[2 * k] = amps_[k] * (a0 / nrm);
        out[2 * k + 1] = amps_[k] * (a1 / nrm);
    }
    amps_ = std::move(out);
    ++num_qubits_;
}

double StateVector::probability(std::size_t qubit, int bit) const {
    check_qubit(qubit);
    const std::uint64_t b = bit_of(qubit);
    double p = 0.0;
    for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        if (((static_cast<std::uint64_t>(k) & b) != 0) == (bit != 0)) {
            p += std::norm(amps_[k]);
        }
    }
    return p;
}

void StateVector::collapse(std::size_t qubit, int bit, double probability) {
    const std::uint64_t b = bit_of(qubit);
    const std::uint64_t low = b - 1;
    Eigen::VectorXcd out(amps_.size() / 2);
    const double scale = 1.0 / std::sqrt(probability);
    for (std::uint64_t r = 0; r < static_cast<std::uint64_t>(out.size()); ++r) {
        const std::uint64_t old = ((r & ~low) << 1) | (bit ? b : 0) | (r & low);
        out[static_cast<Eigen::Index>(r)] = amps_[static_cast<Eigen::Index>(old)] * scale;
    }
    amps_ = std::move(out);
    --num_qubits_;
}

MeasurementRecord StateVector::measure_forced(std::size_t qubit, int bit, double floor) {
    if (bit != 0 && bit != 1) {
        throw DomainError("measurement outcome must be 0 or 1");
    }
    const double p = probability(qubit, bit);
    if (p < floor) {
        throw PostselectionError("outcome " + std::to_string(bit) + " on qubit " + std::to_string(qubit) +
                                 " has probability " + std::to_string(p) + " below the postselection floor");
    }
    collapse(qubit, bit, p);
    return {qubit, bit, p, MeasureMode::Forced};
}

MeasurementRecord StateVector::measure_sampled(std::size_t qubit, std::mt19937_64 &rng) {
    const double p1 = probability(qubit, 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int bit = u(rng) < p1 ? 1 : 0;
    const double p = bit ? p1 : 1.0 - p1;
    collapse(qubit, bit, p);
    return {qubit, bit, p, MeasureMode::Sampled};
}

void StateVector::write_csv(std::ostream &out) const {
    const auto old_precision = out.precision(17);
    out << "index,re,im\n";
    for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        out << k << ',' << amps_[k].real() << ',' << amps_[k].imag() << '\n';
    }
    out.precision(old_precision);
}

DenseUnitary::DenseUnitary(Eigen::MatrixXcd matrix, bool check, double tolerance) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw DimensionError("unitary must be square");
    }
    if (check) {
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
        if ((matrix_ * matrix_.adjoint() - id).cwiseAbs().maxCoeff() > tolerance) {
            throw DomainError("matrix is not unitary within tolerance");
        }
    }
}

DenseUnitary hermitian_exponential_oracle(const Eigen::MatrixXcd &h, double t, std::size_t max_qubits) {
    if (h.rows() != h.cols()) {
        throw DimensionError("Hamiltonian must be square");
    }
    if (static_cast<std::uint64_t>(h.rows()) > (std::uint64_t{1} << max_qubits)) {
        throw ResourceError("Hamiltonian dimension " + std::to_string(h.rows()) + " exceeds the oracle cap 2^" +
                            std::to_string(max_qubits));
    }
    if (h.size() > 0 && (h - h.adjoint()).cwiseAbs().maxCoeff() >= 1e-9) {
        throw DomainError("Hamiltonian is not Hermitian");
    }
    if (!std::isfinite(t)) {
        throw DomainError("evolution time must be finite");
    }
    const Eigen::MatrixXcd herm = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::VectorXd &w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        phases[k] = std::exp(cd(0.0, -w[k] * t));
    }
    Eigen::MatrixXcd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return DenseUnitary(std::move(u));
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw DimensionError("fidelity of states with different dimensions");
    }
    return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

double frobenius_distance(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw DimensionError("Frobenius distance of matrices with different shapes");
    }
    return (u - v).norm();
}

double distance_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    if (a.size() != b.size()) {
        throw DimensionError("phase-free distance of vectors with different lengths");
    }
    const cd overlap = b.dot(a);
    const cd g = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cd(1.0);
    return (a - g * b).cwiseAbs().maxCoeff();
}

}  // namespace qgate
