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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qgate/pauli.hpp"
#include "qgate/stabilizer.hpp"

namespace qgate {

enum class QubitKind : std::uint8_t { Logical, GateAncilla, MagicAncilla, Work };

/// Names a qubit of a program: "L3", "A0", "M1", "W2".
struct QubitRef {
    QubitKind kind = QubitKind::Logical;
    std::size_t index = 0;

    static QubitRef logical(std::size_t i) {
        return {QubitKind::Logical, i};
    }
    static QubitRef ancilla(std::size_t i) {
        return {QubitKind::GateAncilla, i};
    }
    static QubitRef magic(std::size_t i) {
        return {QubitKind::MagicAncilla, i};
    }
    static QubitRef work(std::size_t i) {
        return {QubitKind::Work, i};
    }
    static QubitRef parse(std::string_view text);

    bool is_data() const {
        return kind == QubitKind::Logical || kind == QubitKind::Work;
    }
    bool is_ancilla() const {
        return kind == QubitKind::GateAncilla || kind == QubitKind::MagicAncilla;
    }
    std::string str() const;

    auto operator<=>(const QubitRef &) const = default;
};

struct RefControl {
    QubitRef ref;
    bool key = true;

    bool operator==(const RefControl &) const = default;
};

// Pauli strings inside instructions live on the data register: logical qubit i
// is position i and work qubit w is position n_logical + w.

struct AllocLogical {
    std::size_t count = 0;
    bool operator==(const AllocLogical &) const = default;
};
/// Gate ancilla prepared in |+>.
struct AllocAncilla {
    QubitRef ref;
    bool operator==(const AllocAncilla &) const = default;
};
/// Magic ancilla cos(theta/2)|0> + i sin(theta/2)|1>.
struct AllocMagic {
    QubitRef ref;
    double theta = 0.0;
    bool operator==(const AllocMagic &) const = default;
};
/// Work qubit prepared in |0>.
struct AllocWork {
    QubitRef ref;
    bool operator==(const AllocWork &) const = default;
};
/// Returns a work qubit that must be back in |0>.
struct ReleaseWork {
    QubitRef ref;
    bool operator==(const ReleaseWork &) const = default;
};
/// Controlled-Pauli from an ancilla onto a data qubit.
struct CPauli {
    QubitRef control;
    QubitRef target;
    PauliLetter letter = PauliLetter::Z;
    bool operator==(const CPauli &) const = default;
};
/// CX between two ancillas; gate-ancilla rows are recombined so the control
/// row becomes X_control times the product of both partners.
struct AncillaCX {
    QubitRef control;
    QubitRef target;
    bool operator==(const AncillaCX &) const = default;
};
struct SingleClifford {
    QubitRef target;
    CliffordKind gate = CliffordKind::H;
    bool operator==(const SingleClifford &) const = default;
};
/// exp(i angle X/2) on the ancilla, then a computational-basis measurement.
/// With the ancilla row X_A (x) byproduct the data register receives
/// byproduct^mu exp(i angle byproduct / 2).
struct MeasureRotated {
    QubitRef ancilla;
    double angle = 0.0;
    PauliString byproduct;
    bool operator==(const MeasureRotated &) const = default;
};
struct MeasureX {
    QubitRef ancilla;
    bool operator==(const MeasureX &) const = default;
};
/// Native exp(i angle pauli / 2) on the data register (macro; lowered to a gadget).
struct Rotation {
    PauliString pauli;
    double angle = 0.0;
    bool operator==(const Rotation &) const = default;
};

using BodyOp = std::variant<SingleClifford, Rotation>;

/// Body applied only when every control reads its key.
struct ControlledBlock {
    std::vector<RefControl> controls;
    std::vector<BodyOp> body;
    bool operator==(const ControlledBlock &) const = default;
};

using Instruction = std::variant<AllocLogical, AllocAncilla, AllocMagic, AllocWork, ReleaseWork, CPauli, AncillaCX,
                                 SingleClifford, MeasureRotated, MeasureX, Rotation, ControlledBlock>;

/// Lower-case op name used in JSON and diagnostics ("cpauli", "measure_rotated", ...).
const char *op_name(const Instruction &inst);

struct QGateProgram {
    std::string name;
    std::string source;
    std::size_t n_logical = 0;
    std::size_t n_work = 0;
    /// Exact scalar e^{i global_phase} multiplying the program's action.
    double global_phase = 0.0;
    std::vector<Instruction> instructions;

    std::size_t data_width() const {
        return n_logical + n_work;
    }
    /// Data-register position of a logical or work ref.
    std::size_t data_position(const QubitRef &ref) const;
    QubitRef data_ref(std::size_t position) const;

    std::size_t count_gate_ancillas() const;
    std::size_t count_magic_ancillas() const;
    /// Number of outcome-producing measurements (MeasureRotated and MeasureX).
    std::size_t count_measurements() const;
    bool has_macros() const;

    /// Grows the work register, padding every data Pauli string with identities.
    void resize_work(std::size_t n_work);
    /// Appends `other` (same n_logical). Ancilla and magic indices of `other`
    /// are shifted past this program's; work qubits are shared, so `other`
    /// must release the ones it allocates.
    void append(const QGateProgram &other);

    bool operator==(const QGateProgram &) const = default;
};

/// Emits instructions while tracking each live gate ancilla's data partner.
class ProgramBuilder {
   public:
    explicit ProgramBuilder(std::size_t n_logical, std::string name = {}, std::size_t n_work = 0);

    std::size_t n_logical() const {
        return program_.n_logical;
    }
    std::size_t data_width() const {
        return program_.data_width();
    }

    QubitRef alloc_ancilla();
    QubitRef alloc_magic(double theta);
    QubitRef alloc_work();
    void release_work(const QubitRef &work);
    /// Marks a work qubit as allocated without emitting an instruction (for
    /// fragments spliced into a larger program).
    void assume_work_live(const QubitRef &work);
    void cpauli(const QubitRef &ancilla, const QubitRef &target, PauliLetter letter);
    void ancilla_cx(const QubitRef &control, const QubitRef &target);
    void clifford(const QubitRef &target, CliffordKind gate);
    void measure_rotated(const QubitRef &ancilla, double angle);
    void measure_x(const QubitRef &ancilla);
    void rotation(const PauliString &p, double angle);
    void controlled(std::vector<RefControl> controls, std::vector<BodyOp> body);
    void add_global_phase(double phase) {
        program_.global_phase += phase;
    }
    void append(const QGateProgram &fragment);

    /// Fresh ancilla wired to every non-identity letter of p.
    QubitRef entangle(const PauliString &p);
    /// Full gadget for exp(i angle p / 2); an identity string only adds angle/2
    /// to the global phase.
    void pauli_rotation(const PauliString &p, double angle);

    /// Magic-state teleportation of `angle` onto a live ancilla: emits
    /// AllocMagic, AncillaCX(ancilla -> magic), MeasureX(ancilla). The magic
    /// ancilla inherits the partner and is returned for the final
    /// measure_rotated(magic, 0).
    QubitRef teleport_rotation(const QubitRef &ancilla, double angle);

    /// AncillaCX(to -> from); afterwards `to` carries partner(from) * partner(to).
    /// Throws ProgramError when the partners anticommute.
    void transfer_entanglement(const QubitRef &from, const QubitRef &to);

    const PauliString &partner(const QubitRef &ancilla) const;
    bool is_live(const QubitRef &ancilla) const;

    const QGateProgram &program() const {
        return program_;
    }
    QGateProgram build() &&;
    QGateProgram build() const &;

   private:
    void require_live(const QubitRef &ancilla) const;
    void require_data(const QubitRef &ref) const;

    QGateProgram program_;
    std::size_t next_ancilla_ = 0;
    std::size_t next_magic_ = 0;
    std::vector<bool> work_live_;
    std::map<QubitRef, PauliString> partners_;
};

}  // namespace qgate
