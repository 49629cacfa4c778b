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
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgate/pauli.hpp"

namespace qgate {

/// Smallest Born probability a forced measurement branch may have.
inline constexpr double kPostselectionFloor = 1e-12;

enum class GateKind : std::uint8_t { H, S, Sdg, X, Y, Z, RX, RZ, Phase };

/// Single-qubit gate. RX(t) = exp(-i t X/2), RZ(t) = exp(-i t Z/2),
/// Phase(t) = diag(1, e^{i t}).
struct Gate1 {
    GateKind kind = GateKind::H;
    double angle = 0.0;

    static Gate1 h() {
        return {GateKind::H, 0.0};
    }
    static Gate1 rx(double theta) {
        return {GateKind::RX, theta};
    }
    static Gate1 rz(double theta) {
        return {GateKind::RZ, theta};
    }
    static Gate1 phase(double theta) {
        return {GateKind::Phase, theta};
    }

    Eigen::Matrix2cd matrix() const;
};

/// Control condition: the gate fires when the control qubit reads `key`.
struct Control {
    std::size_t qubit = 0;
    bool key = true;

    bool operator==(const Control &) const = default;
};

enum class MeasureMode : std::uint8_t { Forced, Sampled };

struct MeasurementRecord {
    std::size_t qubit_index = 0;
    int outcome = 0;
    double probability = 1.0;
    MeasureMode mode = MeasureMode::Forced;
};

/// Dense amplitude vector over n qubits. Qubit 0 is the most significant bit
/// of the basis index, so basis(2, 2) is |10>.
class StateVector {
   public:
    StateVector() : StateVector(0) {
    }
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t num_qubits);

    static StateVector basis(std::size_t num_qubits, std::uint64_t index);
    /// Takes ownership of the amplitudes; length must be a power of two and
    /// the norm 1 within `tolerance`.
    static StateVector from_amplitudes(Eigen::VectorXcd amplitudes, double tolerance = 1e-10);
    /// Normalized vector of independent complex Gaussian amplitudes.
    static StateVector random(std::size_t num_qubits, std::mt19937_64 &rng);

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t dimension() const {
        return static_cast<std::size_t>(amps_.size());
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amps_;
    }
    std::complex<double> operator[](std::uint64_t index) const {
        return amps_[static_cast<Eigen::Index>(index)];
    }
    double norm() const {
        return amps_.norm();
    }

    void apply(const Gate1 &gate, std::size_t qubit);
    void apply_matrix(const Eigen::Matrix2cd &m, std::size_t qubit);
    void apply_controlled(const std::vector<Control> &controls, std::size_t target, const Eigen::Matrix2cd &m);
    void apply_controlled_pauli(std::size_t control, std::size_t target, PauliLetter letter);
    /// Multiplies by the Pauli operator (including its phase).
    void apply_pauli(const PauliString &p);
    /// cos(phi/2) + i sin(phi/2) p, evaluated on basis indices without a dense matrix.
    void apply_pauli_rotation(const PauliString &p, double phi);
    /// Pauli rotation applied only on the subspace where every control matches its key.
    void apply_controlled_pauli_rotation(const std::vector<Control> &controls, const PauliString &p, double phi);
    /// Dense 2^k x 2^k matrix on `targets` (targets[0] is the matrix's most
    /// significant bit), optionally controlled.
    void apply_dense(const std::vector<std::size_t> &targets, const Eigen::MatrixXcd &m,
                     const std::vector<Control> &controls = {});
    void multiply_scalar(std::complex<double> factor);

    /// Appends a qubit in state a0|0> + a1|1> as the new last qubit.
    void append_qubit(std::complex<double> a0, std::complex<double> a1);

    /// Born probability of reading `bit` on `qubit`.
    double probability(std::size_t qubit, int bit) const;
    /// Projects onto `bit`, renormalizes and deletes the qubit; higher qubits
    /// shift down by one.
    MeasurementRecord measure_forced(std::size_t qubit, int bit, double floor = kPostselectionFloor);
    MeasurementRecord measure_sampled(std::size_t qubit, std::mt19937_64 &rng);

    /// CSV dump with header "index,re,im".
    void write_csv(std::ostream &out) const;

   private:
    void check_qubit(std::size_t qubit) const;
    std::uint64_t bit_of(std::size_t qubit) const {
        return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
    }
    void collapse(std::size_t qubit, int bit, double probability);

    std::size_t num_qubits_ = 0;
    Eigen::VectorXcd amps_;
};

/// Square matrix that is unitary within `tolerance` (checked when `check` is set).
class DenseUnitary {
   public:
    DenseUnitary() = default;
    explicit DenseUnitary(Eigen::MatrixXcd matrix, bool check = true, double tolerance = 1e-9);

    std::size_t dimension() const {
        return static_cast<std::size_t>(matrix_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

   private:
    Eigen::MatrixXcd matrix_;
};

/// exp(-i H t) through the Hermitian eigendecomposition of H.
DenseUnitary hermitian_exponential_oracle(const Eigen::MatrixXcd &h, double t,
                                          std::size_t max_qubits = kDefaultOracleQubits);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);
/// Raw Frobenius norm of U - V; global phase is not quotiented out.
double frobenius_distance(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &v);
inline double frobenius_distance(const DenseUnitary &u, const DenseUnitary &v) {
    return frobenius_distance(u.matrix(), v.matrix());
}
/// max_k |a_k - e^{i g} b_k| minimized over a single global phase g chosen from
/// the largest-modulus overlap.
double distance_up_to_phase(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

}  // namespace qgate
