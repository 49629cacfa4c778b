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

#include "qgate/program.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

QubitRef shifted(QubitRef ref, std::size_t ancilla_offset, std::size_t magic_offset) {
    if (ref.kind == QubitKind::GateAncilla) {
        ref.index += ancilla_offset;
    } else if (ref.kind == QubitKind::MagicAncilla) {
        ref.index += magic_offset;
    }
    return ref;
}

}  // namespace

QubitRef QubitRef::parse(std::string_view text) {
    if (text.size() < 2) {
        throw ParseError("bad qubit reference '" + std::string(text) + "'");
    }
    QubitRef ref;
    switch (text[0]) {
        case 'L':
            ref.kind = QubitKind::Logical;
            break;
        case 'A':
            ref.kind = QubitKind::GateAncilla;
            break;
        case 'M':
            ref.kind = QubitKind::MagicAncilla;
            break;
        case 'W':
            ref.kind = QubitKind::Work;
            break;
        default:
            throw ParseError("bad qubit reference '" + std::string(text) + "'");
    }
    const char *begin = text.data() + 1;
    const char *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, ref.index);
    if (ec != std::errc() || ptr != end) {
        throw ParseError("bad qubit reference '" + std::string(text) + "'");
    }
    return ref;
}

std::string QubitRef::str() const {
    static const char kPrefix[] = {'L', 'A', 'M', 'W'};
    return kPrefix[static_cast<int>(kind)] + std::to_string(index);
}

const char *op_name(const Instruction &inst) {
    return std::visit(overloaded{
                          [](const AllocLogical &) { return "alloc_logical"; },
                          [](const AllocAncilla &) { return "alloc_ancilla"; },
                          [](const AllocMagic &) { return "alloc_magic"; },
                          [](const AllocWork &) { return "alloc_work"; },
                          [](const ReleaseWork &) { return "release_work"; },
                          [](const CPauli &) { return "cpauli"; },
                          [](const AncillaCX &) { return "ancilla_cx"; },
                          [](const SingleClifford &) { return "clifford"; },
                          [](const MeasureRotated &) { return "measure_rotated"; },
                          [](const MeasureX &) { return "measure_x"; },
                          [](const Rotation &) { return "rotation"; },
                          [](const ControlledBlock &) { return "controlled"; },
                      },
                      inst);
}

std::size_t QGateProgram::data_position(const QubitRef &ref) const {
    if (ref.kind == QubitKind::Logical && ref.index < n_logical) {
        return ref.index;
    }
    if (ref.kind == QubitKind::Work && ref.index < n_work) {
        return n_logical + ref.index;
    }
    throw ProgramError(ref.str() + " is not a data qubit of this program");
}

QubitRef QGateProgram::data_ref(std::size_t position) const {
    if (position < n_logical) {
        return QubitRef::logical(position);
    }
    if (position < data_width()) {
        return QubitRef::work(position - n_logical);
    }
    throw ProgramError("data position " + std::to_string(position) + " out of range");
}

std::size_t QGateProgram::count_gate_ancillas() const {
    return static_cast<std::size_t>(std::count_if(instructions.begin(), instructions.end(), [](const auto &i) {
        return std::holds_alternative<AllocAncilla>(i);
    }));
}

std::size_t QGateProgram::count_magic_ancillas() const {
    return static_cast<std::size_t>(std::count_if(instructions.begin(), instructions.end(), [](const auto &i) {
        return std::holds_alternative<AllocMagic>(i);
    }));
}

std::size_t QGateProgram::count_measurements() const {
    return static_cast<std::size_t>(std::count_if(instructions.begin(), instructions.end(), [](const auto &i) {
        return std::holds_alternative<MeasureRotated>(i) || std::holds_alternative<MeasureX>(i);
    }));
}

bool QGateProgram::has_macros() const {
    return std::any_of(instructions.begin(), instructions.end(), [](const auto &i) {
        return std::holds_alternative<Rotation>(i) || std::holds_alternative<ControlledBlock>(i);
    });
}

void QGateProgram::resize_work(std::size_t new_work) {
    if (new_work < n_work) {
        throw ProgramError("work register cannot shrink");
    }
    const std::size_t extra = new_work - n_work;
    n_work = new_work;
    if (extra == 0) {
        return;
    }
    auto grow = [extra](PauliString &p) { p = p.extended(extra); };
    for (auto &inst : instructions) {
        if (auto *m = std::get_if<MeasureRotated>(&inst)) {
            grow(m->byproduct);
        } else if (auto *r = std::get_if<Rotation>(&inst)) {
            grow(r->pauli);
        } else if (auto *b = std::get_if<ControlledBlock>(&inst)) {
            for (auto &op : b->body) {
                if (auto *br = std::get_if<Rotation>(&op)) {
                    grow(br->pauli);
                }
            }
        }
    }
}

void QGateProgram::append(const QGateProgram &other) {
    if (other.n_logical != n_logical) {
        throw DimensionError("appending a " + std::to_string(other.n_logical) + "-qubit program to a " +
                             std::to_string(n_logical) + "-qubit program");
    }
    QGateProgram tail = other;
    const std::size_t width = std::max(n_work, tail.n_work);
    resize_work(width);
    tail.resize_work(width);
    std::size_t ancilla_offset = 0, magic_offset = 0;
    for (const auto &inst : instructions) {
        if (const auto *a = std::get_if<AllocAncilla>(&inst)) {
            ancilla_offset = std::max(ancilla_offset, a->ref.index + 1);
        } else if (const auto *m = std::get_if<AllocMagic>(&inst)) {
            magic_offset = std::max(magic_offset, m->ref.index + 1);
        }
    }
    auto sh = [&](QubitRef &r) { r = shifted(r, ancilla_offset, magic_offset); };
    for (auto &inst : tail.instructions) {
        std::visit(overloaded{
                       [](AllocLogical &) {},
                       [&](AllocAncilla &i) { sh(i.ref); },
                       [&](AllocMagic &i) { sh(i.ref); },
                       [](AllocWork &) {},
                       [](ReleaseWork &) {},
                       [&](CPauli &i) { sh(i.control); },
                       [&](AncillaCX &i) {
                           sh(i.control);
                           sh(i.target);
                       },
                       [&](SingleClifford &i) { sh(i.target); },
                       [&](MeasureRotated &i) { sh(i.ancilla); },
                       [&](MeasureX &i) { sh(i.ancilla); },
                       [](Rotation &) {},
                       [](ControlledBlock &) {},
                   },
                   inst);
        if (std::holds_alternative<AllocLogical>(inst)) {
            continue;
        }
        instructions.push_back(std::move(inst));
    }
    global_phase += tail.global_phase;
}

ProgramBuilder::ProgramBuilder(std::size_t n_logical, std::string name, std::size_t n_work) {
    program_.name = std::move(name);
    program_.n_logical = n_logical;
    program_.n_work = n_work;
    work_live_.assign(n_work, false);
    program_.instructions.push_back(AllocLogical{n_logical});
}

void ProgramBuilder::require_live(const QubitRef &ancilla) const {
    if (!partners_.count(ancilla)) {
        throw ProgramError(ancilla.str() + " is not a live entangled ancilla");
    }
}

void ProgramBuilder::require_data(const QubitRef &ref) const {
    program_.data_position(ref);
    if (ref.kind == QubitKind::Work && !work_live_[ref.index]) {
        throw ProgramError(ref.str() + " is not allocated");
    }
}

QubitRef ProgramBuilder::alloc_ancilla() {
    const QubitRef a = QubitRef::ancilla(next_ancilla_++);
    program_.instructions.push_back(AllocAncilla{a});
    partners_.emplace(a, PauliString(program_.data_width()));
    return a;
}

QubitRef ProgramBuilder::alloc_magic(double theta) {
    const QubitRef m = QubitRef::magic(next_magic_++);
    program_.instructions.push_back(AllocMagic{m, theta});
    return m;
}

QubitRef ProgramBuilder::alloc_work() {
    std::size_t w = 0;
    while (w < work_live_.size() && work_live_[w]) {
        ++w;
    }
    if (w == work_live_.size()) {
        program_.resize_work(w + 1);
        work_live_.push_back(false);
        for (auto &[ref, p] : partners_) {
            p = p.extended(1);
        }
    }
    work_live_[w] = true;
    const QubitRef ref = QubitRef::work(w);
    program_.instructions.push_back(AllocWork{ref});
    return ref;
}

void ProgramBuilder::release_work(const QubitRef &work) {
    if (work.kind != QubitKind::Work) {
        throw ProgramError(work.str() + " is not a work qubit");
    }
    require_data(work);
    work_live_[work.index] = false;
    program_.instructions.push_back(ReleaseWork{work});
}

void ProgramBuilder::assume_work_live(const QubitRef &work) {
    if (work.kind != QubitKind::Work || work.index >= work_live_.size()) {
        throw ProgramError(work.str() + " is not a work qubit of this program");
    }
    work_live_[work.index] = true;
}

void ProgramBuilder::cpauli(const QubitRef &ancilla, const QubitRef &target, PauliLetter letter) {
    require_live(ancilla);
    require_data(target);
    if (letter == PauliLetter::I) {
        throw DomainError("controlled-Pauli letter must be X, Y or Z");
    }
    auto &p = partners_.at(ancilla);
    const std::size_t pos = program_.data_position(target);
    const PauliLetter existing = p.letter(pos);
    if (existing != PauliLetter::I && existing != letter) {
        throw ProgramError("controlled-" + std::string(1, to_char(letter)) + " onto " + target.str() +
                           " anticommutes with the partner of " + ancilla.str());
    }
    p = PauliString::single(p.num_qubits(), pos, letter) * p;
    program_.instructions.push_back(CPauli{ancilla, target, letter});
}

void ProgramBuilder::ancilla_cx(const QubitRef &control, const QubitRef &target) {
    if (!control.is_ancilla() || !target.is_ancilla() || control == target) {
        throw ProgramError("ancilla CX needs two distinct ancillas");
    }
    auto c = partners_.find(control);
    auto t = partners_.find(target);
    if (c != partners_.end() && t != partners_.end()) {
        if (!commutes(c->second, t->second)) {
            throw ProgramError("invalid-transfer: partners of " + control.str() + " and " + target.str() +
                               " anticommute");
        }
        c->second *= t->second;
    }
    program_.instructions.push_back(AncillaCX{control, target});
}

void ProgramBuilder::clifford(const QubitRef &target, CliffordKind gate) {
    if (is_two_qubit(gate)) {
        throw DomainError("SingleClifford takes a one-qubit gate");
    }
    if (target.is_data()) {
        require_data(target);
        const std::size_t pos = program_.data_position(target);
        for (auto &[ref, p] : partners_) {
            p = conjugate(p, CliffordGate{gate, pos, 0});
        }
    } else if (partners_.count(target)) {
        throw ProgramError("Clifford on entangled ancilla " + target.str() + " breaks its partner row");
    }
    program_.instructions.push_back(SingleClifford{target, gate});
}

void ProgramBuilder::measure_rotated(const QubitRef &ancilla, double angle) {
    require_live(ancilla);
    program_.instructions.push_back(MeasureRotated{ancilla, angle, partners_.at(ancilla)});
    partners_.erase(ancilla);
}

void ProgramBuilder::measure_x(const QubitRef &ancilla) {
    if (!ancilla.is_ancilla()) {
        throw ProgramError("MeasureX needs an ancilla");
    }
    program_.instructions.push_back(MeasureX{ancilla});
    partners_.erase(ancilla);
}

void ProgramBuilder::rotation(const PauliString &p, double angle) {
    if (p.num_qubits() != program_.data_width()) {
        throw DimensionError("rotation string width does not match the data register");
    }
    program_.instructions.push_back(Rotation{p, angle});
}

void ProgramBuilder::controlled(std::vector<RefControl> controls, std::vector<BodyOp> body) {
    for (const auto &c : controls) {
        require_data(c.ref);
    }
    program_.instructions.push_back(ControlledBlock{std::move(controls), std::move(body)});
}

void ProgramBuilder::append(const QGateProgram &fragment) {
    if (!partners_.empty()) {
        throw ProgramError("cannot append a fragment while ancillas are live");
    }
    program_.append(fragment);
    next_ancilla_ = 0;
    next_magic_ = 0;
    for (const auto &inst : program_.instructions) {
        if (const auto *a = std::get_if<AllocAncilla>(&inst)) {
            next_ancilla_ = std::max(next_ancilla_, a->ref.index + 1);
        } else if (const auto *m = std::get_if<AllocMagic>(&inst)) {
            next_magic_ = std::max(next_magic_, m->ref.index + 1);
        }
    }
    work_live_.resize(program_.n_work, false);
}

QubitRef ProgramBuilder::entangle(const PauliString &p) {
    if (p.num_qubits() != program_.data_width()) {
        throw DimensionError("Pauli string width does not match the data register");
    }
    const QubitRef a = alloc_ancilla();
    for (std::size_t q : p.support()) {
        cpauli(a, program_.data_ref(q), p.letter(q));
    }
    return a;
}

void ProgramBuilder::pauli_rotation(const PauliString &p, double angle) {
    if (p.phase_exponent() & 1u) {
        throw DomainError("rotation generator " + p.str() + " is not Hermitian");
    }
    if (!std::isfinite(angle)) {
        throw DomainError("rotation angle must be finite");
    }
    const double signed_angle = p.phase_exponent() == 2 ? -angle : angle;
    if (p.is_identity()) {
        program_.global_phase += signed_angle / 2;
        return;
    }
    const QubitRef a = entangle(p.unsigned_copy());
    measure_rotated(a, signed_angle);
}

QubitRef ProgramBuilder::teleport_rotation(const QubitRef &ancilla, double angle) {
    require_live(ancilla);
    const QubitRef m = alloc_magic(angle);
    program_.instructions.push_back(AncillaCX{ancilla, m});
    program_.instructions.push_back(MeasureX{ancilla});
    partners_.emplace(m, partners_.at(ancilla));
    partners_.erase(ancilla);
    return m;
}

void ProgramBuilder::transfer_entanglement(const QubitRef &from, const QubitRef &to) {
    require_live(from);
    require_live(to);
    ancilla_cx(to, from);
}

const PauliString &ProgramBuilder::partner(const QubitRef &ancilla) const {
    require_live(ancilla);
    return partners_.at(ancilla);
}

bool ProgramBuilder::is_live(const QubitRef &ancilla) const {
    return partners_.count(ancilla) != 0;
}

QGateProgram ProgramBuilder::build() && {
    return std::move(program_);
}

QGateProgram ProgramBuilder::build() const & {
    return program_;
}

}  // namespace qgate
