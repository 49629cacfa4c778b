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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgate/hamiltonian.hpp"
#include "qgate/pauli.hpp"
#include "qgate/program.hpp"
#include "qgate/statevector.hpp"

namespace qgate {

/// Fourth-order Suzuki coefficient.
inline constexpr double kSuzukiS4 = 1.351207191959657;

/// exp(i angle string / 2).
struct PauliRotation {
    PauliString string;
    double angle = 0.0;
};

/// Commuting rotations plus the scalar phase that makes their product exact.
struct RotationSet {
    std::vector<PauliRotation> rotations;
    double global_phase = 0.0;
};

// ---- Pauli-string evolution -------------------------------------------------

/// One ancilla, one controlled-Pauli per non-identity letter, one rotated
/// measurement. An identity string yields an empty program whose global
/// phase is angle/2; a warning is appended when `warnings` is given.
QGateProgram compile_pauli_rotation(const PauliString &p, double angle, std::vector<std::string> *warnings = nullptr);

/// Program whose gadgets realise the rotations of `set` in order.
QGateProgram compile_rotation_set(std::size_t n_logical, const RotationSet &set, std::string name = {});

// ---- Trotter product formulas ----------------------------------------------

struct TrotterSlice {
    std::size_t term = 0;
    /// Fraction of the term's full evolution applied by this slice.
    double fraction = 0.0;
};

/// Orders 1 (plain), 2 (palindrome per step) and 4 (Suzuki S2(s) S2(1-2s) S2(s)
/// per step). With TermOrdering::Random each step uses a fresh permutation
/// drawn from `seed`.
std::vector<TrotterSlice> trotter_schedule(std::size_t n_terms, int order, std::size_t steps,
                                           TermOrdering ordering = TermOrdering::AsGiven, std::uint64_t seed = 0);

/// Rotation list for full-evolution rotations `terms` (angle = total angle of
/// each term over the whole evolution).
std::vector<PauliRotation> trotter_sequence(const std::vector<PauliRotation> &terms, int order, std::size_t steps,
                                            TermOrdering ordering = TermOrdering::AsGiven, std::uint64_t seed = 0);

/// exp(-i H delta) for a real-coefficient Pauli sum: coefficient c becomes the
/// rotation angle -2 c delta. Identity strings contribute global phase only.
QGateProgram compile_trotter(const PauliTermList &h, double delta, int order, std::size_t steps);

// ---- Sparse matrices: projectors and the direct routine ---------------------

/// Per-qubit labels of |i><j| (ket i, bra j): f = i AND NOT j, b = NOT i AND j,
/// t = both 1, d = both 0.
struct TermLabels {
    std::vector<bool> f, b, t, d;

    std::vector<std::size_t> flip_set() const;
    std::vector<std::size_t> number_set() const;
};
TermLabels label_coefficients(std::uint64_t i, std::uint64_t j, std::size_t n);

/// Pauli expansion of h|i><j| + conj(h)|j><i| (i != j), or h|i><i| (i == j, h real).
PauliTermList expand_projector_pauli(std::uint64_t i, std::uint64_t j, std::complex<double> h, std::size_t n);

/// Pauli expansion of the whole sparse Hamiltonian with equal strings merged.
PauliTermList sparse_to_pauli_terms(const SparseHamiltonian &h);

/// Walsh-Hadamard coefficients of a diagonal as Z-type strings (|c| < 1e-14 pruned).
std::vector<WeightedPauli> diagonal_pauli_terms(const Eigen::VectorXd &diagonal);

/// exp(-i delta diag(d)): commuting Z-string rotations, the identity
/// coefficient folded into the global phase.
QGateProgram compile_diagonal(const Eigen::VectorXd &diagonal, double delta);

struct Fragment {
    std::vector<Instruction> forward;
    std::vector<Instruction> inverse;
};

/// CNOT cascade (controlled-X blocks) with common control `designated` and
/// every other listed qubit as a target. The inverse is the same cascade.
Fragment compile_fanout(std::size_t n_logical, const std::vector<std::size_t> &qubits, std::size_t designated);

/// Emits a multi-controlled exp(i angle letter_target / 2): X gates bracket
/// key-0 controls, a Toffoli ladder computes the conjunction into n-1 work
/// qubits, one singly-controlled rotation fires from the last work qubit, and
/// the ladder is uncomputed and released.
void emit_ncontrolled_rotation(ProgramBuilder &builder, const std::vector<Control> &controls, std::size_t target,
                               PauliLetter letter, double angle);
QGateProgram compile_ncontrolled_rotation(std::size_t n_logical, const std::vector<Control> &controls,
                                          std::size_t target, double angle, PauliLetter letter = PauliLetter::X);

struct DirectOptions {
    /// Expand the multi-controlled rotation into a Toffoli ladder instead of a
    /// single native ControlledBlock.
    bool toffoli_ladder = false;
};

/// exp(-i delta h (|i><j| + |j><i|)) for real h, exactly: fan-out over the flip
/// set onto its lowest qubit, a rotation exp(-i delta h X) on that qubit
/// controlled by every other qubit with the keys both basis states share
/// after the fan-out, then the inverse fan-out.
QGateProgram compile_direct_term(std::uint64_t i, std::uint64_t j, double h, double delta, std::size_t n,
                                 const DirectOptions &options = {});

/// exp(-i H delta) by a product formula over {diagonal block} and each
/// off-diagonal pair. Complex off-diagonal values raise UnsupportedError.
QGateProgram compile_sparse(const SparseHamiltonian &h, double delta, int order, std::size_t steps,
                            TermOrdering ordering = TermOrdering::AsGiven, std::uint64_t seed = 0,
                            const DirectOptions &options = {});

// ---- Controlled exponentials ------------------------------------------------

/// Subset expansion of prod_c (I + (-1)^key Z_c)/2: one entry per subset S of
/// the controls with sign prod_{c in S} (-1)^key, in size-then-lexicographic order.
struct ControlTerm {
    std::vector<std::size_t> qubits;
    int sign = 1;
};
std::vector<ControlTerm> control_projector_terms(const std::vector<Control> &controls);

/// C^n P^m(phi) = exp(i phi [controls match] (x) |1..1><1..1|_targets).
RotationSet controlled_phase_rotations(std::size_t n, const std::vector<Control> &controls,
                                       const std::vector<std::size_t> &targets, double phi);
/// C^n R_Z^m(phi): exp(-i phi Z_t / 2) on every target when the controls match.
RotationSet controlled_zrotation_rotations(std::size_t n, const std::vector<Control> &controls,
                                           const std::vector<std::size_t> &targets, double phi);
/// Controlled exp(i angle p / 2); p must not act on the controls.
RotationSet controlled_rotation_set(const std::vector<Control> &controls, const PauliString &p, double angle);
/// Controlled single-qubit Pauli, S or S_DAG as an exact rotation set.
RotationSet controlled_clifford_set(std::size_t n, const std::vector<Control> &controls, std::size_t target,
                                    CliffordKind gate);

QGateProgram compile_controlled_phase_exponential(std::size_t n, const std::vector<Control> &controls,
                                                  const std::vector<std::size_t> &targets, double phi);
QGateProgram compile_controlled_zrotation_exponential(std::size_t n, const std::vector<Control> &controls,
                                                      const std::vector<std::size_t> &targets, double phi);

/// CNOT as H_t, the CZ rotation set, H_t.
QGateProgram compile_cnot(std::size_t n, std::size_t control, std::size_t target);
/// Toffoli on data refs: H_t, CCZ rotation gadgets, H_t. The CCZ global
/// phase is added to the builder.
void emit_toffoli(ProgramBuilder &builder, const QubitRef &c1, const QubitRef &c2, const QubitRef &target,
                  bool transfer = true);
/// Toffoli as H_t, CCZ, H_t. With `transfer`, the three-body Z string is built
/// by entanglement transfer from the Z_c1 Z_c2 and Z_t ancillas.
QGateProgram compile_toffoli(std::size_t n, std::size_t c1, std::size_t c2, std::size_t target, bool transfer = true);

// ---- Program transforms -----------------------------------------------------

enum class LowerStrategy : std::uint8_t {
    /// ControlledBlocks become controlled-rotation sets (2^k gadgets per body rotation).
    RotationSets,
    /// ControlledBlocks with three or more controls go through a Toffoli
    /// ladder; every Toffoli is lowered as H, CCZ rotation gadgets, H.
    ToffoliLadder,
};

/// Replaces Rotation and ControlledBlock macros by gadgets. The result has
/// only QGATE primitives and the same action (including global phase).
QGateProgram lower(const QGateProgram &program, LowerStrategy strategy = LowerStrategy::RotationSets);

/// Program for the same evolution on a register of `n_total` logical qubits,
/// with logical q moved to position offset + q.
QGateProgram embed(const QGateProgram &program, std::size_t n_total, std::size_t offset);

/// Program implementing |0><0| (x) I + |1><1| (x) U on the control qubit
/// `control` (a logical qubit not touched by U).
QGateProgram add_control(const QGateProgram &program, std::size_t control);

/// Undoes `program` when it consists of data-register macros and Cliffords
/// only (used for fan-out inverses and tests).
QGateProgram inverse_macro_program(const QGateProgram &program);

// ---- Cost -------------------------------------------------------------------

struct CostReport {
    std::size_t gate_ancillas = 0;
    std::size_t magic_states = 0;
    /// Ancilla-logical controlled-Pauli gates.
    std::size_t entangling_gates = 0;
    /// Ancilla-ancilla CX gates (entanglement transfer, teleportation).
    std::size_t ancilla_ancilla_gates = 0;
    std::size_t work_qubits = 0;
    /// Rotated measurements plus native rotations in macros.
    std::size_t rotations = 0;
    /// Doubly-controlled X blocks (ladder Toffolis).
    std::size_t toffoli_count = 0;
    /// ControlledBlock macros still present (zero after lowering).
    std::size_t controlled_blocks = 0;

    bool operator==(const CostReport &) const = default;
};

/// Throws ProgramError for programs that fail validation.
CostReport cost(const QGateProgram &program);

}  // namespace qgate
