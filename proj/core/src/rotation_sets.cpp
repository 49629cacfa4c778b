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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qgate/compiler.hpp"
#include "qgate/errors.hpp"

namespace qgate {

namespace {

void check_controls(std::size_t n, const std::vector<Control> &controls, const std::vector<std::size_t> &targets) {
    std::vector<bool> seen(n, false);
    auto mark = [&](std::size_t q) {
        if (q >= n) {
            throw DimensionError("qubit " + std::to_string(q) + " outside a " + std::to_string(n) + "-qubit register");
        }
        if (seen[q]) {
            throw DomainError("qubit " + std::to_string(q) + " appears twice among controls and targets");
        }
        seen[q] = true;
    };
    for (const auto &c : controls) {
        mark(c.qubit);
    }
    for (std::size_t t : targets) {
        mark(t);
    }
}

PauliString z_string(std::size_t n, const std::vector<std::size_t> &qubits) {
    PauliString p(n);
    for (std::size_t q : qubits) {
        p.set_letter(q, PauliLetter::Z);
    }
    return p;
}

}  // namespace

std::vector<ControlTerm> control_projector_terms(const std::vector<Control> &controls) {
    const std::size_t k = controls.size();
    if (k >= 31) {
        throw ResourceError("too many controls for a subset expansion");
    }
    std::vector<std::uint32_t> masks(std::size_t{1} << k);
    for (std::uint32_t m = 0; m < masks.size(); ++m) {
        masks[m] = m;
    }
    // Size first, then lexicographic in the control order.
    auto members = [k](std::uint32_t m) {
        std::vector<std::size_t> out;
        for (std::size_t b = 0; b < k; ++b) {
            if (m & (1u << b)) {
                out.push_back(b);
            }
        }
        return out;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) {
            return pa < pb;
        }
        return members(a) < members(b);
    });
    std::vector<ControlTerm> out;
    out.reserve(masks.size());
    for (std::uint32_t m : masks) {
        ControlTerm term;
        for (std::size_t b : members(m)) {
            term.qubits.push_back(controls[b].qubit);
            if (controls[b].key) {
                term.sign = -term.sign;
            }
        }
        out.push_back(std::move(term));
    }
    return out;
}

RotationSet controlled_phase_rotations(std::size_t n, const std::vector<Control> &controls,
                                       const std::vector<std::size_t> &targets, double phi) {
    check_controls(n, controls, targets);
    if (!std::isfinite(phi)) {
        throw DomainError("phase must be finite");
    }
    std::vector<Control> all = controls;
    for (std::size_t t : targets) {
        all.push_back({t, true});
    }
    RotationSet set;
    if (phi == 0.0) {
        return set;
    }
    const double scale = std::ldexp(1.0, -static_cast<int>(all.size()));
    for (const auto &term : control_projector_terms(all)) {
        if (term.qubits.empty()) {
            set.global_phase += phi * scale;
        } else {
            set.rotations.push_back({z_string(n, term.qubits), 2 * phi * term.sign * scale});
        }
    }
    return set;
}

RotationSet controlled_zrotation_rotations(std::size_t n, const std::vector<Control> &controls,
                                           const std::vector<std::size_t> &targets, double phi) {
    check_controls(n, controls, targets);
    if (!std::isfinite(phi)) {
        throw DomainError("angle must be finite");
    }
    RotationSet set;
    if (phi == 0.0) {
        return set;
    }
    const double scale = std::ldexp(1.0, -static_cast<int>(controls.size()));
    for (const auto &term : control_projector_terms(controls)) {
        for (std::size_t t : targets) {
            auto qubits = term.qubits;
            qubits.push_back(t);
            set.rotations.push_back({z_string(n, qubits), -phi * term.sign * scale});
        }
    }
    return set;
}

RotationSet controlled_rotation_set(const std::vector<Control> &controls, const PauliString &p, double angle) {
    if (p.phase_exponent() & 1u) {
        throw DomainError("rotation generator " + p.str() + " is not Hermitian");
    }
    const std::size_t n = p.num_qubits();
    check_controls(n, controls, {});
    for (const auto &c : controls) {
        if (p.letter(c.qubit) != PauliLetter::I) {
            throw DomainError("rotation string acts on control qubit " + std::to_string(c.qubit));
        }
    }
    const double a = p.phase_exponent() == 2 ? -angle : angle;
    const PauliString base = p.unsigned_copy();
    RotationSet set;
    if (a == 0.0) {
        return set;
    }
    const double scale = std::ldexp(1.0, -static_cast<int>(controls.size()));
    for (const auto &term : control_projector_terms(controls)) {
        PauliString s = z_string(n, term.qubits) * base;
        if (s.is_identity()) {
            set.global_phase += a * term.sign * scale / 2;
        } else {
            set.rotations.push_back({s, a * term.sign * scale});
        }
    }
    return set;
}

RotationSet controlled_clifford_set(std::size_t n, const std::vector<Control> &controls, std::size_t target,
                                    CliffordKind gate) {
    check_controls(n, controls, {target});
    using std::numbers::pi;
    switch (gate) {
        case CliffordKind::S:
            return controlled_phase_rotations(n, controls, {target}, pi / 2);
        case CliffordKind::Sdg:
            return controlled_phase_rotations(n, controls, {target}, -pi / 2);
        case CliffordKind::Z:
            return controlled_phase_rotations(n, controls, {target}, pi);
        case CliffordKind::X:
        case CliffordKind::Y: {
            // G = i exp(-i pi G / 2).
            const PauliLetter letter = gate == CliffordKind::X ? PauliLetter::X : PauliLetter::Y;
            RotationSet set = controlled_rotation_set(controls, PauliString::single(n, target, letter), -pi);
            RotationSet phase = controlled_phase_rotations(n, controls, {}, pi / 2);
            set.rotations.insert(set.rotations.end(), phase.rotations.begin(), phase.rotations.end());
            set.global_phase += phase.global_phase;
            return set;
        }
        default:
            throw UnsupportedError(std::string("controlled ") + clifford_name(gate) + " has no rotation-set form");
    }
}

QGateProgram compile_rotation_set(std::size_t n_logical, const RotationSet &set, std::string name) {
    ProgramBuilder builder(n_logical, std::move(name));
    for (const auto &r : set.rotations) {
        builder.pauli_rotation(r.string, r.angle);
    }
    builder.add_global_phase(set.global_phase);
    return std::move(builder).build();
}

QGateProgram compile_controlled_phase_exponential(std::size_t n, const std::vector<Control> &controls,
                                                  const std::vector<std::size_t> &targets, double phi) {
    return compile_rotation_set(n, controlled_phase_rotations(n, controls, targets, phi), "controlled_phase");
}

QGateProgram compile_controlled_zrotation_exponential(std::size_t n, const std::vector<Control> &controls,
                                                      const std::vector<std::size_t> &targets, double phi) {
    return compile_rotation_set(n, controlled_zrotation_rotations(n, controls, targets, phi), "controlled_rz");
}

QGateProgram compile_cnot(std::size_t n, std::size_t control, std::size_t target) {
    const RotationSet cz = controlled_phase_rotations(n, {{control, true}}, {target}, std::numbers::pi);
    ProgramBuilder builder(n, "cnot");
    builder.clifford(QubitRef::logical(target), CliffordKind::H);
    for (const auto &r : cz.rotations) {
        builder.pauli_rotation(r.string, r.angle);
    }
    builder.clifford(QubitRef::logical(target), CliffordKind::H);
    builder.add_global_phase(cz.global_phase);
    return std::move(builder).build();
}

void emit_toffoli(ProgramBuilder &builder, const QubitRef &c1, const QubitRef &c2, const QubitRef &target,
                  bool transfer) {
    const QGateProgram &prog = builder.program();
    const std::size_t n = builder.data_width();
    const RotationSet ccz =
        controlled_phase_rotations(n, {{prog.data_position(c1), true}, {prog.data_position(c2), true}},
                                   {prog.data_position(target)}, std::numbers::pi);
    builder.clifford(target, CliffordKind::H);
    const auto &rs = ccz.rotations;
    if (!transfer) {
        for (const auto &r : rs) {
            builder.pauli_rotation(r.string, r.angle);
        }
    } else {
        // rs: Z1, Z2, Zt, Z1Z2, Z1Zt, Z2Zt, Z1Z2Zt.
        const QubitRef a12 = builder.entangle(rs[3].string);
        const QubitRef at = builder.entangle(rs[2].string);
        const QubitRef a123 = builder.alloc_ancilla();
        builder.transfer_entanglement(a12, a123);
        builder.transfer_entanglement(at, a123);
        builder.measure_rotated(a123, rs[6].angle);
        builder.measure_rotated(a12, rs[3].angle);
        builder.measure_rotated(at, rs[2].angle);
        for (std::size_t k : {0, 1, 4, 5}) {
            builder.pauli_rotation(rs[k].string, rs[k].angle);
        }
    }
    builder.clifford(target, CliffordKind::H);
    builder.add_global_phase(ccz.global_phase);
}

QGateProgram compile_toffoli(std::size_t n, std::size_t c1, std::size_t c2, std::size_t target, bool transfer) {
    if (c1 >= n || c2 >= n || target >= n || c1 == c2 || c1 == target || c2 == target) {
        throw DomainError("Toffoli needs three distinct qubits in range");
    }
    ProgramBuilder builder(n, "toffoli");
    emit_toffoli(builder, QubitRef::logical(c1), QubitRef::logical(c2), QubitRef::logical(target), transfer);
    return std::move(builder).build();
}

}  // namespace qgate
