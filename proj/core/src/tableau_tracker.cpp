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

#include "tableau_tracker.hpp"

#include <algorithm>

#include "qgate/errors.hpp"

namespace qgate::detail {

namespace {

void report(std::vector<Diagnostic> &out, std::size_t index, const char *code, std::string message) {
    out.push_back({index, code, std::move(message)});
}

CliffordKind controlled_kind(PauliLetter letter) {
    switch (letter) {
        case PauliLetter::X:
            return CliffordKind::CX;
        case PauliLetter::Y:
            return CliffordKind::CY;
        default:
            return CliffordKind::CZ;
    }
}

}  // namespace

TableauTracker::TableauTracker(const QGateProgram &program) : program_(program), tableau_(program.n_logical) {
    for (std::size_t q = 0; q < program.n_logical; ++q) {
        layout_.push_back(QubitRef::logical(q));
    }
}

std::optional<std::size_t> TableauTracker::position(const QubitRef &ref) const {
    auto it = std::find(layout_.begin(), layout_.end(), ref);
    if (it == layout_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - layout_.begin());
}

std::size_t TableauTracker::require_position(const QubitRef &ref) const {
    auto p = position(ref);
    if (!p) {
        throw ProgramError(ref.str() + " is not live");
    }
    return *p;
}

std::optional<std::size_t> TableauTracker::row_of(const QubitRef &owner) const {
    auto it = std::find(owners_.begin(), owners_.end(), owner);
    if (it == owners_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - owners_.begin());
}

PauliString TableauTracker::to_layout(const PauliString &data) const {
    PauliString out(layout_.size());
    for (std::size_t q : data.support()) {
        out.set_letter(require_position(program_.data_ref(q)), data.letter(q));
    }
    out.set_phase_exponent(data.phase_exponent());
    return out;
}

void TableauTracker::append(const QubitRef &ref) {
    layout_.push_back(ref);
    tableau_.append_qubit();
    allocated_.insert(ref);
}

void TableauTracker::remove(std::size_t pos) {
    layout_.erase(layout_.begin() + static_cast<std::ptrdiff_t>(pos));
    tableau_.remove_qubit(pos);
}

bool TableauTracker::pure_row(std::size_t row, const QubitRef &owner) const {
    const PauliString &g = tableau_.generator(row);
    for (std::size_t q = 0; q < layout_.size(); ++q) {
        if (layout_[q].is_data()) {
            continue;
        }
        const PauliLetter want = layout_[q] == owner ? PauliLetter::X : PauliLetter::I;
        if (g.letter(q) != want) {
            return false;
        }
    }
    return true;
}

bool TableauTracker::live_ancilla(const QubitRef &ref, std::size_t index, std::vector<Diagnostic> &out) const {
    if (!ref.is_ancilla()) {
        report(out, index, "bad-kind", ref.str() + " is not an ancilla");
        return false;
    }
    if (position(ref)) {
        return true;
    }
    if (allocated_.count(ref)) {
        report(out, index, "use-after-measure", ref.str() + " was already measured");
    } else {
        report(out, index, "unallocated-ref", ref.str() + " used before allocation");
    }
    return false;
}

bool TableauTracker::live_data(const QubitRef &ref, std::size_t index, std::vector<Diagnostic> &out) const {
    if (!ref.is_data()) {
        report(out, index, "bad-kind", ref.str() + " is not a data qubit");
        return false;
    }
    if (position(ref)) {
        return true;
    }
    report(out, index, "unallocated-ref", ref.str() + " is not live");
    return false;
}

void TableauTracker::drop_rows_touching(std::size_t pos, std::size_t index, std::vector<Diagnostic> &out,
                                        const char *code) {
    for (std::size_t r = tableau_.size(); r-- > 0;) {
        if (tableau_.generator(r).letter(pos) != PauliLetter::I) {
            report(out, index, code,
                   "row of " + owners_[r].str() + " still acts on " + layout_[pos].str() + "; row dropped");
            tableau_.remove_generator(r);
            owners_.erase(owners_.begin() + static_cast<std::ptrdiff_t>(r));
        }
    }
}

void TableauTracker::step(const Instruction &inst, std::size_t index, std::vector<Diagnostic> &out, int x_outcome) {
    if (const auto *i = std::get_if<AllocLogical>(&inst)) {
        if (i->count != program_.n_logical) {
            report(out, index, "logical-count",
                   "declares " + std::to_string(i->count) + " logical qubits, program has " +
                       std::to_string(program_.n_logical));
        }
    } else if (const auto *i = std::get_if<AllocAncilla>(&inst)) {
        if (i->ref.kind != QubitKind::GateAncilla) {
            report(out, index, "bad-kind", i->ref.str() + " is not a gate ancilla");
        } else if (allocated_.count(i->ref)) {
            report(out, index, "double-allocation", i->ref.str() + " allocated twice");
        } else {
            append(i->ref);
            tableau_.add_generator(PauliString::single(layout_.size(), layout_.size() - 1, PauliLetter::X));
            owners_.push_back(i->ref);
        }
    } else if (const auto *i = std::get_if<AllocMagic>(&inst)) {
        if (i->ref.kind != QubitKind::MagicAncilla) {
            report(out, index, "bad-kind", i->ref.str() + " is not a magic ancilla");
        } else if (allocated_.count(i->ref)) {
            report(out, index, "double-allocation", i->ref.str() + " allocated twice");
        } else {
            append(i->ref);
        }
    } else if (const auto *i = std::get_if<AllocWork>(&inst)) {
        if (i->ref.kind != QubitKind::Work || i->ref.index >= program_.n_work) {
            report(out, index, "bad-kind", i->ref.str() + " is not a work qubit of this program");
        } else if (position(i->ref)) {
            report(out, index, "double-allocation", i->ref.str() + " is already live");
        } else {
            append(i->ref);
        }
    } else if (const auto *i = std::get_if<ReleaseWork>(&inst)) {
        if (i->ref.kind != QubitKind::Work || !position(i->ref)) {
            report(out, index, "unallocated-ref", i->ref.str() + " is not a live work qubit");
        } else {
            const std::size_t pos = *position(i->ref);
            drop_rows_touching(pos, index, out, "work-entangled");
            remove(pos);
        }
    } else if (const auto *i = std::get_if<CPauli>(&inst)) {
        if (i->letter == PauliLetter::I) {
            report(out, index, "bad-letter", "controlled-Pauli letter must be X, Y or Z");
        } else if (live_ancilla(i->control, index, out) && live_data(i->target, index, out)) {
            tableau_.conjugate({controlled_kind(i->letter), *position(i->control), *position(i->target)});
        }
    } else if (const auto *i = std::get_if<AncillaCX>(&inst)) {
        if (i->control == i->target) {
            report(out, index, "bad-kind", "ancilla CX needs two distinct ancillas");
        } else if (live_ancilla(i->control, index, out) && live_ancilla(i->target, index, out)) {
            const auto rc = row_of(i->control), rt = row_of(i->target);
            if (rc && rt && (!pure_row(*rc, i->control) || !pure_row(*rt, i->target))) {
                report(out, index, "invalid-transfer",
                       "rows of " + i->control.str() + " and " + i->target.str() + " are not single-ancilla rows");
            }
            tableau_.conjugate({CliffordKind::CX, *position(i->control), *position(i->target)});
            if (rc && rt) {
                try {
                    tableau_.recombine(*rc, *rt);
                } catch (const ConsistencyError &) {
                    report(out, index, "invalid-transfer", "partners anticommute");
                }
            }
        }
    } else if (const auto *i = std::get_if<SingleClifford>(&inst)) {
        if (is_two_qubit(i->gate)) {
            report(out, index, "bad-gate", "SingleClifford takes a one-qubit gate");
        } else if (!position(i->target)) {
            report(out, index, allocated_.count(i->target) ? "use-after-measure" : "unallocated-ref",
                   i->target.str() + " is not live");
        } else {
            tableau_.conjugate({i->gate, *position(i->target), 0});
        }
    } else if (const auto *i = std::get_if<MeasureRotated>(&inst)) {
        if (finished_.count(i->ancilla)) {
            report(out, index, "double-measurement", i->ancilla.str() + " measured twice");
            return;
        }
        if (!live_ancilla(i->ancilla, index, out)) {
            return;
        }
        const std::size_t pos = *position(i->ancilla);
        const auto r = row_of(i->ancilla);
        if (i->byproduct.num_qubits() != program_.data_width()) {
            report(out, index, "frame-mismatch", "byproduct width does not match the data register");
        } else if (!r || !pure_row(*r, i->ancilla)) {
            report(out, index, "frame-mismatch", i->ancilla.str() + " has no X_A (x) data stabilizer row");
        } else {
            PauliString expected = PauliString::single(layout_.size(), pos, PauliLetter::X);
            expected *= to_layout(i->byproduct);
            if (!(expected == tableau_.generator(*r))) {
                report(out, index, "frame-mismatch",
                       "byproduct " + i->byproduct.str() + " does not match row " +
                           format_generator(tableau_.generator(*r)));
            }
        }
        if (r) {
            tableau_.remove_generator(*r);
            owners_.erase(owners_.begin() + static_cast<std::ptrdiff_t>(*r));
        }
        drop_rows_touching(pos, index, out, "entangled-ancilla");
        remove(pos);
        finished_.insert(i->ancilla);
    } else if (const auto *i = std::get_if<MeasureX>(&inst)) {
        if (finished_.count(i->ancilla)) {
            report(out, index, "double-measurement", i->ancilla.str() + " measured twice");
            return;
        }
        if (!live_ancilla(i->ancilla, index, out)) {
            return;
        }
        const std::size_t pos = *position(i->ancilla);
        std::vector<PauliString> kept;
        std::vector<QubitRef> kept_owners;
        for (std::size_t r = 0; r < tableau_.size(); ++r) {
            PauliString g = tableau_.generator(r);
            const PauliLetter l = g.letter(pos);
            if (l == PauliLetter::Y || l == PauliLetter::Z) {
                report(out, index, "entangled-ancilla", "row of " + owners_[r].str() + " is destroyed by MeasureX");
                continue;
            }
            g.set_letter(pos, PauliLetter::I);
            if (l == PauliLetter::X && x_outcome) {
                g.set_phase_exponent(g.phase_exponent() + 2);
            }
            QubitRef owner = owners_[r];
            if (owner == i->ancilla) {
                std::vector<QubitRef> carriers;
                for (std::size_t q = 0; q < layout_.size(); ++q) {
                    if (q != pos && layout_[q].is_ancilla() && g.letter(q) == PauliLetter::X) {
                        carriers.push_back(layout_[q]);
                    }
                }
                if (carriers.size() != 1) {
                    continue;
                }
                owner = carriers.front();
            }
            kept.push_back(g.without_qubit(pos));
            kept_owners.push_back(owner);
        }
        layout_.erase(layout_.begin() + static_cast<std::ptrdiff_t>(pos));
        tableau_ = StabilizerTableau(layout_.size());
        for (auto &g : kept) {
            tableau_.add_generator(std::move(g));
        }
        owners_ = std::move(kept_owners);
        finished_.insert(i->ancilla);
    } else if (const auto *i = std::get_if<Rotation>(&inst)) {
        if (i->pauli.num_qubits() != program_.data_width()) {
            report(out, index, "dimension", "rotation width does not match the data register");
            return;
        }
        for (std::size_t q : i->pauli.support()) {
            if (!position(program_.data_ref(q))) {
                report(out, index, "unallocated-ref", program_.data_ref(q).str() + " is not live");
                return;
            }
        }
        const PauliString p = to_layout(i->pauli);
        for (std::size_t r = 0; r < tableau_.size(); ++r) {
            if (!commutes(p, tableau_.generator(r))) {
                report(out, index, "macro-with-live-ancilla", "rotation disturbs the row of " + owners_[r].str());
            }
        }
    } else if (const auto *i = std::get_if<ControlledBlock>(&inst)) {
        std::vector<std::size_t> touched;
        for (const auto &c : i->controls) {
            if (!live_data(c.ref, index, out)) {
                return;
            }
            touched.push_back(*position(c.ref));
        }
        for (const auto &op : i->body) {
            if (const auto *sc = std::get_if<SingleClifford>(&op)) {
                if (!live_data(sc->target, index, out)) {
                    return;
                }
                touched.push_back(*position(sc->target));
            } else {
                const auto &rot = std::get<Rotation>(op);
                if (rot.pauli.num_qubits() != program_.data_width()) {
                    report(out, index, "dimension", "rotation width does not match the data register");
                    return;
                }
                for (std::size_t q : rot.pauli.support()) {
                    if (!live_data(program_.data_ref(q), index, out)) {
                        return;
                    }
                    touched.push_back(*position(program_.data_ref(q)));
                }
            }
        }
        std::vector<std::size_t> controls(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(i->controls.size()));
        std::sort(controls.begin(), controls.end());
        if (std::adjacent_find(controls.begin(), controls.end()) != controls.end()) {
            report(out, index, "bad-controls", "repeated control qubit");
        }
        for (std::size_t k = i->controls.size(); k < touched.size(); ++k) {
            if (std::binary_search(controls.begin(), controls.end(), touched[k])) {
                report(out, index, "bad-controls", "block body acts on one of its controls");
                break;
            }
        }
        for (std::size_t r = 0; r < tableau_.size(); ++r) {
            for (std::size_t q : touched) {
                if (tableau_.generator(r).letter(q) != PauliLetter::I) {
                    report(out, index, "macro-with-live-ancilla",
                           "controlled block touches the row of " + owners_[r].str());
                    break;
                }
            }
        }
    }
}

void TableauTracker::finish(std::size_t index, std::vector<Diagnostic> &out) const {
    for (const auto &ref : layout_) {
        if (ref.is_ancilla()) {
            report(out, index, "unmeasured-ancilla", ref.str() + " is never measured");
        } else if (ref.kind == QubitKind::Work) {
            report(out, index, "work-not-released", ref.str() + " is never released");
        }
    }
}

}  // namespace qgate::detail
