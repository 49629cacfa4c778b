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
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>

#include "qgate/compiler.hpp"
#include "qgate/errors.hpp"
#include "qgate/executor.hpp"

namespace qgate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class F>
void for_each_ref(Instruction &inst, F &&f) {
    std::visit(overloaded{
                   [](AllocLogical &) {},
                   [&](AllocAncilla &i) { f(i.ref); },
                   [&](AllocMagic &i) { f(i.ref); },
                   [&](AllocWork &i) { f(i.ref); },
                   [&](ReleaseWork &i) { f(i.ref); },
                   [&](CPauli &i) {
                       f(i.control);
                       f(i.target);
                   },
                   [&](AncillaCX &i) {
                       f(i.control);
                       f(i.target);
                   },
                   [&](SingleClifford &i) { f(i.target); },
                   [&](MeasureRotated &i) { f(i.ancilla); },
                   [&](MeasureX &i) { f(i.ancilla); },
                   [](Rotation &) {},
                   [&](ControlledBlock &i) {
                       for (auto &c : i.controls) {
                           f(c.ref);
                       }
                       for (auto &op : i.body) {
                           if (auto *sc = std::get_if<SingleClifford>(&op)) {
                               f(sc->target);
                           }
                       }
                   },
               },
               inst);
}

template <class F>
void for_each_string(Instruction &inst, F &&f) {
    if (auto *m = std::get_if<MeasureRotated>(&inst)) {
        f(m->byproduct);
    } else if (auto *r = std::get_if<Rotation>(&inst)) {
        f(r->pauli);
    } else if (auto *b = std::get_if<ControlledBlock>(&inst)) {
        for (auto &op : b->body) {
            if (auto *br = std::get_if<Rotation>(&op)) {
                f(br->pauli);
            }
        }
    }
}

// Appends instructions to a program under construction, keeping ancilla and
// magic indices unique across spliced fragments.
class Splicer {
   public:
    explicit Splicer(const QGateProgram &source) {
        out_.name = source.name;
        out_.source = source.source;
        out_.n_logical = source.n_logical;
        out_.n_work = source.n_work;
        out_.global_phase = source.global_phase;
        for (const auto &inst : source.instructions) {
            Instruction copy = inst;
            for_each_ref(copy, [&](QubitRef &r) {
                if (r.kind == QubitKind::GateAncilla) {
                    next_ancilla_ = std::max(next_ancilla_, r.index + 1);
                } else if (r.kind == QubitKind::MagicAncilla) {
                    next_magic_ = std::max(next_magic_, r.index + 1);
                }
            });
        }
    }

    QGateProgram &program() {
        return out_;
    }

    void push(Instruction inst) {
        const std::size_t width = out_.data_width();
        for_each_string(inst, [width](PauliString &p) {
            if (p.num_qubits() < width) {
                p = p.extended(width - p.num_qubits());
            }
        });
        if (const auto *a = std::get_if<AllocWork>(&inst)) {
            live_work_.insert(a->ref);
        } else if (const auto *r = std::get_if<ReleaseWork>(&inst)) {
            live_work_.erase(r->ref);
        }
        out_.instructions.push_back(std::move(inst));
    }

    /// Fragment over the same logical register; its work indices are taken as
    /// absolute.
    void splice(const QGateProgram &frag) {
        if (frag.n_logical != out_.n_logical) {
            throw DimensionError("fragment register differs from the program register");
        }
        if (frag.n_work > out_.n_work) {
            out_.resize_work(frag.n_work);
        }
        std::map<QubitRef, QubitRef> renamed;
        for (const auto &inst : frag.instructions) {
            if (std::holds_alternative<AllocLogical>(inst)) {
                continue;
            }
            Instruction copy = inst;
            for_each_ref(copy, [&](QubitRef &r) {
                if (!r.is_ancilla()) {
                    return;
                }
                auto it = renamed.find(r);
                if (it == renamed.end()) {
                    const std::size_t index =
                        r.kind == QubitKind::GateAncilla ? next_ancilla_++ : next_magic_++;
                    it = renamed.emplace(r, QubitRef{r.kind, index}).first;
                }
                r = it->second;
            });
            push(std::move(copy));
        }
        out_.global_phase += frag.global_phase;
    }

    ProgramBuilder fragment_builder() const {
        ProgramBuilder builder(out_.n_logical, {}, out_.n_work);
        for (const auto &w : live_work_) {
            builder.assume_work_live(w);
        }
        return builder;
    }

    void add_global_phase(double phase) {
        out_.global_phase += phase;
    }

   private:
    QGateProgram out_;
    std::size_t next_ancilla_ = 0;
    std::size_t next_magic_ = 0;
    std::set<QubitRef> live_work_;
};

void emit_set(ProgramBuilder &builder, const RotationSet &set) {
    for (const auto &r : set.rotations) {
        builder.pauli_rotation(r.string, r.angle);
    }
    builder.add_global_phase(set.global_phase);
}

void emit_controlled_body(ProgramBuilder &builder, const std::vector<Control> &controls, const BodyOp &op) {
    const std::size_t n = builder.data_width();
    if (const auto *r = std::get_if<Rotation>(&op)) {
        PauliString p = r->pauli;
        if (p.num_qubits() < n) {
            p = p.extended(n - p.num_qubits());
        }
        emit_set(builder, controlled_rotation_set(controls, p, r->angle));
        return;
    }
    const auto &sc = std::get<SingleClifford>(op);
    const std::size_t t = builder.program().data_position(sc.target);
    if (controls.size() == 2 && sc.gate == CliffordKind::X) {
        const QGateProgram &prog = builder.program();
        for (const auto &c : controls) {
            if (!c.key) {
                builder.clifford(prog.data_ref(c.qubit), CliffordKind::X);
            }
        }
        emit_toffoli(builder, prog.data_ref(controls[0].qubit), prog.data_ref(controls[1].qubit), sc.target);
        for (const auto &c : controls) {
            if (!c.key) {
                builder.clifford(prog.data_ref(c.qubit), CliffordKind::X);
            }
        }
        return;
    }
    emit_set(builder, controlled_clifford_set(n, controls, t, sc.gate));
}

void emit_lowered_block(ProgramBuilder &builder, const ControlledBlock &block, LowerStrategy strategy) {
    const QGateProgram &prog = builder.program();
    std::vector<Control> controls;
    for (const auto &c : block.controls) {
        controls.push_back({prog.data_position(c.ref), c.key});
    }
    if (strategy == LowerStrategy::RotationSets || controls.size() < 3) {
        for (const auto &op : block.body) {
            emit_controlled_body(builder, controls, op);
        }
        return;
    }
    for (const auto &c : block.controls) {
        if (!c.key) {
            builder.clifford(c.ref, CliffordKind::X);
        }
    }
    std::vector<QubitRef> work;
    QubitRef prev = block.controls[0].ref;
    for (std::size_t k = 1; k < block.controls.size(); ++k) {
        const QubitRef w = builder.alloc_work();
        emit_toffoli(builder, prev, block.controls[k].ref, w);
        work.push_back(w);
        prev = w;
    }
    const std::vector<Control> single{{builder.program().data_position(prev), true}};
    for (const auto &op : block.body) {
        emit_controlled_body(builder, single, op);
    }
    for (std::size_t k = block.controls.size() - 1; k >= 1; --k) {
        const QubitRef before = k == 1 ? block.controls[0].ref : work[k - 2];
        emit_toffoli(builder, before, block.controls[k].ref, work[k - 1]);
    }
    for (auto it = work.rbegin(); it != work.rend(); ++it) {
        builder.release_work(*it);
    }
    for (const auto &c : block.controls) {
        if (!c.key) {
            builder.clifford(c.ref, CliffordKind::X);
        }
    }
}

Eigen::Matrix2cd clifford_matrix(CliffordKind kind) {
    switch (kind) {
        case CliffordKind::H:
            return Gate1::h().matrix();
        case CliffordKind::S:
            return Gate1{GateKind::S, 0.0}.matrix();
        case CliffordKind::Sdg:
            return Gate1{GateKind::Sdg, 0.0}.matrix();
        case CliffordKind::X:
            return Gate1{GateKind::X, 0.0}.matrix();
        case CliffordKind::Y:
            return Gate1{GateKind::Y, 0.0}.matrix();
        case CliffordKind::Z:
            return Gate1{GateKind::Z, 0.0}.matrix();
        default:
            throw DomainError("not a one-qubit Clifford");
    }
}

CliffordKind inverse_kind(CliffordKind kind) {
    if (kind == CliffordKind::S) {
        return CliffordKind::Sdg;
    }
    if (kind == CliffordKind::Sdg) {
        return CliffordKind::S;
    }
    return kind;
}

}  // namespace

QGateProgram lower(const QGateProgram &program, LowerStrategy strategy) {
    require_valid(program);
    Splicer splicer(program);
    splicer.program().instructions.clear();
    for (const auto &inst : program.instructions) {
        if (const auto *r = std::get_if<Rotation>(&inst)) {
            ProgramBuilder b = splicer.fragment_builder();
            PauliString p = r->pauli;
            if (p.num_qubits() < b.data_width()) {
                p = p.extended(b.data_width() - p.num_qubits());
            }
            b.pauli_rotation(p, r->angle);
            splicer.splice(std::move(b).build());
        } else if (const auto *blk = std::get_if<ControlledBlock>(&inst)) {
            ProgramBuilder b = splicer.fragment_builder();
            emit_lowered_block(b, *blk, strategy);
            splicer.splice(std::move(b).build());
        } else {
            splicer.push(inst);
        }
    }
    return std::move(splicer.program());
}

QGateProgram embed(const QGateProgram &program, std::size_t n_total, std::size_t offset) {
    if (offset + program.n_logical > n_total) {
        throw DimensionError("embedding does not fit in the target register");
    }
    QGateProgram out = program;
    out.n_logical = n_total;
    const std::size_t width = n_total + program.n_work;
    for (auto &inst : out.instructions) {
        if (auto *a = std::get_if<AllocLogical>(&inst)) {
            a->count = n_total;
            continue;
        }
        for_each_ref(inst, [&](QubitRef &r) {
            if (r.kind == QubitKind::Logical) {
                r.index += offset;
            }
        });
        for_each_string(inst, [&](PauliString &p) {
            PauliString q(width);
            for (std::size_t k = 0; k < p.num_qubits(); ++k) {
                const std::size_t dest = k < program.n_logical ? offset + k : n_total + (k - program.n_logical);
                q.set_letter(dest, p.letter(k));
            }
            q.set_phase_exponent(p.phase_exponent());
            p = q;
        });
    }
    return out;
}

QGateProgram add_control(const QGateProgram &program, std::size_t control) {
    require_valid(program);
    if (control >= program.n_logical) {
        throw DimensionError("control qubit " + std::to_string(control) + " out of range");
    }
    const QubitRef cref = QubitRef::logical(control);
    Splicer splicer(program);
    splicer.program().instructions.clear();
    splicer.program().global_phase = 0.0;
    std::vector<Eigen::Matrix2cd> clifford_product(program.data_width(), Eigen::Matrix2cd::Identity());

    auto touches = [&](const Instruction &inst) {
        Instruction copy = inst;
        bool hit = false;
        for_each_ref(copy, [&](QubitRef &r) { hit = hit || r == cref; });
        for_each_string(copy, [&](PauliString &p) { hit = hit || p.letter(control) != PauliLetter::I; });
        return hit;
    };

    for (const auto &inst : program.instructions) {
        if (touches(inst)) {
            throw DomainError("program acts on the requested control qubit " + cref.str());
        }
        if (std::holds_alternative<AllocMagic>(inst) || std::holds_alternative<AncillaCX>(inst) ||
            std::holds_alternative<MeasureX>(inst)) {
            throw UnsupportedError(std::string("cannot add a control to a program containing ") + op_name(inst));
        }
        if (const auto *m = std::get_if<MeasureRotated>(&inst)) {
            splicer.push(MeasureRotated{m->ancilla, m->angle / 2, m->byproduct});
            ProgramBuilder b = splicer.fragment_builder();
            PauliString p = m->byproduct;
            if (p.num_qubits() < b.data_width()) {
                p = p.extended(b.data_width() - p.num_qubits());
            }
            b.pauli_rotation(PauliString::single(p.num_qubits(), control, PauliLetter::Z) * p, -m->angle / 2);
            splicer.splice(std::move(b).build());
        } else if (const auto *r = std::get_if<Rotation>(&inst)) {
            splicer.push(ControlledBlock{{{cref, true}}, {*r}});
        } else if (const auto *blk = std::get_if<ControlledBlock>(&inst)) {
            ControlledBlock copy = *blk;
            copy.controls.insert(copy.controls.begin(), RefControl{cref, true});
            splicer.push(std::move(copy));
        } else if (const auto *sc = std::get_if<SingleClifford>(&inst)) {
            if (sc->target.is_data()) {
                auto &acc = clifford_product[program.data_position(sc->target)];
                acc = clifford_matrix(sc->gate) * acc;
            }
            splicer.push(inst);
        } else {
            splicer.push(inst);
        }
    }
    // The control-0 branch sees only the Cliffords; their product must be a
    // scalar, which is cancelled by a phase on |0> of the control.
    double branch0 = 0.0;
    for (const auto &m : clifford_product) {
        const std::complex<double> lambda = m(0, 0);
        if (std::abs(m(0, 1)) > 1e-12 || std::abs(m(1, 0)) > 1e-12 || std::abs(m(1, 1) - lambda) > 1e-12) {
            throw UnsupportedError("the uncontrolled Clifford gates of the program do not cancel");
        }
        branch0 += std::arg(lambda);
    }
    // exp(i g |1><1|_c) exp(-i b0 |0><0|_c) = exp(i (g - b0)/2) exp(-i (g + b0) Z_c / 2).
    const double g = program.global_phase;
    const double angle = -(g + branch0);
    ProgramBuilder b = splicer.fragment_builder();
    if (std::abs(std::remainder(angle, 4 * std::numbers::pi)) > 1e-15) {
        b.pauli_rotation(PauliString::single(b.data_width(), control, PauliLetter::Z), angle);
    }
    b.add_global_phase((g - branch0) / 2);
    splicer.splice(std::move(b).build());
    QGateProgram out = std::move(splicer.program());
    out.name = program.name.empty() ? "controlled" : "controlled_" + program.name;
    return out;
}

QGateProgram inverse_macro_program(const QGateProgram &program) {
    QGateProgram out = program;
    out.instructions.clear();
    out.instructions.push_back(AllocLogical{program.n_logical});
    out.global_phase = -program.global_phase;
    for (auto it = program.instructions.rbegin(); it != program.instructions.rend(); ++it) {
        const Instruction &inst = *it;
        if (std::holds_alternative<AllocLogical>(inst)) {
            continue;
        }
        if (const auto *r = std::get_if<Rotation>(&inst)) {
            out.instructions.push_back(Rotation{r->pauli, -r->angle});
        } else if (const auto *sc = std::get_if<SingleClifford>(&inst); sc && sc->target.is_data()) {
            out.instructions.push_back(SingleClifford{sc->target, inverse_kind(sc->gate)});
        } else if (const auto *blk = std::get_if<ControlledBlock>(&inst)) {
            ControlledBlock inv{blk->controls, {}};
            for (auto op = blk->body.rbegin(); op != blk->body.rend(); ++op) {
                if (const auto *br = std::get_if<Rotation>(&*op)) {
                    inv.body.push_back(Rotation{br->pauli, -br->angle});
                } else {
                    const auto &c = std::get<SingleClifford>(*op);
                    inv.body.push_back(SingleClifford{c.target, inverse_kind(c.gate)});
                }
            }
            out.instructions.push_back(std::move(inv));
        } else {
            throw UnsupportedError(std::string("cannot invert instruction ") + op_name(inst));
        }
    }
    return out;
}

}  // namespace qgate
