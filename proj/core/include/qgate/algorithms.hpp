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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgate/compiler.hpp"
#include "qgate/hamiltonian.hpp"
#include "qgate/statevector.hpp"

namespace qgate {

/// H = alpha II + beta ZI + gamma IZ + delta ZZ + zeta XX (Hartree), H2 at 1.8 Angstrom.
struct H2TwoQubitModel {
    double alpha = -0.96028;
    double beta = 0.08240;
    double gamma = -0.08240;
    double delta = -0.00226;
    double zeta = 0.24801;

    PauliTermList terms() const;
    Eigen::MatrixXcd dense() const;
    /// (|01> + |10>)/sqrt(2).
    static StateVector initial_state();
};

struct EigenPair {
    double energy = 0.0;
    StateVector state;
};
/// Lowest eigenpair of a dense Hermitian matrix.
EigenPair ground_state(const Eigen::MatrixXcd &h);

struct FidelityPoint {
    std::size_t steps = 0;
    int order = 1;
    double one_minus_f = 0.0;
    /// Raw Frobenius distance between the compiled and exact unitaries.
    double frobenius = 0.0;
};

std::vector<FidelityPoint> h2_fidelity_curve(const H2TwoQubitModel &model, const std::vector<std::size_t> &steps,
                                             int order, double time = 1.0);

enum class CompileMethod : std::uint8_t { Direct, Pauli };

struct ScalingRow {
    int order = 1;
    std::size_t steps = 0;
    double frobenius = 0.0;
    /// |<U e_n, U_tau e_n>|^2 for every basis state e_n.
    std::vector<double> fidelity;
};

inline constexpr std::size_t kScalingMaxQubits = 6;

std::vector<ScalingRow> trotter_scaling_study(const SparseHamiltonian &h, double delta,
                                              const std::vector<std::size_t> &steps, const std::vector<int> &orders,
                                              CompileMethod method = CompileMethod::Direct);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

enum class EvolutionPath : std::uint8_t {
    /// Dense controlled powers of exp(-i H t) from the eigendecomposition oracle.
    Native,
    /// Trotter/direct-compiled QGATE program with the b-register qubit added as a control.
    Compiled,
};

inline constexpr std::size_t kQpeMaxQubits = 16;

struct QPEConfig {
    std::size_t b_qubits = 4;
    std::size_t shots = 1024;
    std::uint64_t seed = 0;
    /// Evolution time of U is delta * scale.
    double delta = 1.0;
    double scale = 1.0;
    EvolutionPath path = EvolutionPath::Native;
    CompileMethod method = CompileMethod::Pauli;
    int order = 2;
    std::size_t steps = 10;
    /// Inverse QFT from compiled controlled-phase gadgets (true) or its dense matrix.
    bool compiled_qft = true;
};

struct PhaseEstimate {
    std::map<std::string, std::size_t> histogram;
    std::string mode_bitstring;
    double theta_hat = 0.0;
    std::optional<double> energy_hat;
    /// Exact distribution of the b-register readout, indexed by the integer k.
    std::vector<double> probabilities;
};

/// Evolution exp(-i H t) as a dense matrix and as a compiled program.
class EvolutionSource {
   public:
    explicit EvolutionSource(SparseHamiltonian h);
    explicit EvolutionSource(PauliTermList h);

    std::size_t num_qubits() const {
        return n_;
    }
    const Eigen::MatrixXcd &dense() const {
        return dense_;
    }
    QGateProgram compile(double time, CompileMethod method, int order, std::size_t steps) const;

   private:
    std::size_t n_ = 0;
    Eigen::MatrixXcd dense_;
    std::optional<SparseHamiltonian> sparse_;
    std::optional<PauliTermList> pauli_;
};

PhaseEstimate qpe(const EvolutionSource &source, const StateVector &eigenstate, const QPEConfig &config);

/// Inverse QFT on the first b qubits of an n-qubit register, from Hadamards
/// and compiled controlled-phase gadgets. The readout order is reversed:
/// the integer k is read with qubit 0 as its least significant bit.
QGateProgram compile_inverse_qft(std::size_t n, std::size_t b);

/// Phase of U|psi> = e^{2 pi i theta}|psi> in [0, 1) for U = exp(-i E t).
double phase_of_energy(double energy, double time);
/// E = -2 pi theta_w / delta with theta wrapped from [0,1) to (-1/2, 1/2].
double energy_from_phase(double theta_hat, double delta);
/// 2^-b plus the eigenphase shift (in turns) allowed by a unitary error eps.
double qpe_drift_bound(std::size_t b, double eps);

struct SweepRow {
    double delta = 0.0;
    double theta_hat = 0.0;
    double theta_exact = 0.0;
};

/// For each delta: QPE of U^(delta * scale), against frac(delta * scale * theta_1).
std::vector<SweepRow> qpe_phase_sweep(const EvolutionSource &source, const StateVector &eigenstate, double energy,
                                      const QPEConfig &config, const std::vector<double> &deltas);

}  // namespace qgate
