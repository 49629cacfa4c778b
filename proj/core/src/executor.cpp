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

#include "qgate/executor.hpp"

#include <cmath>
#include <map>
#include <random>

#include "qgate/errors.hpp"
#include "tableau_tracker.hpp"

namespace qgate {

namespace {

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

Gate1 clifford_gate(CliffordKind kind) {
    switch (kind) {
        case CliffordKind::H:
            return {GateKind::H, 0.0};
        case CliffordKind::S:
            return {GateKind::S, 0.0};
        case CliffordKind::Sdg:
            return {GateKind::Sdg, 0.0};
        case CliffordKind::X:
            return {GateKind::X, 0.0};
        case CliffordKind::Y:
            return {GateKind::Y, 0.0};
        case CliffordKind::Z:
            return {GateKind::Z, 0.0};
        default:
            throw DomainError("not a one-qubit Clifford");
    }
}

bool finite_angles(const Instruction &inst) {
    if (const auto *m = std::get_if<MeasureRotated>(&inst)) {
        return std::isfinite(m->angle);
    }
    if (const auto *m = std::get_if<AllocMagic>(&inst)) {
        return std::isfinite(m->theta);
    }
    if (const auto *r = std::get_if<Rotation>(&inst)) {
        return std::isfinite(r->angle);
    }
    if (const auto *b = std::get_if<ControlledBlock>(&inst)) {
        for (const auto &op : b->body) {
            if (const auto *r = std::get_if<Rotation>(&op); r && !std::isfinite(r->angle)) {
                return false;
            }
        }
    }
    return true;
}

class Runner {
   public:
    Runner(const QGateProgram &program, const StateVector &initial, ExecMode mode, const ExecOptions &options)
        : program_(program),
          options_(options),
          mode_(mode),
          tracker_(program),
          frame_(program.n_logical),
          rng_(options.seed),
          track_(options.frame == FramePolicy::TrackToEnd) {
        if (initial.num_qubits() != program.n_logical) {
            throw DimensionError("initial state has " + std::to_string(initial.num_qubits()) +
                                 " qubits, program has " + std::to_string(program.n_logical) + " logical qubits");
        }
        result_.final_state = initial;
    }

    ExecutionResult run() {
        for (std::size_t k = 0; k < program_.instructions.size(); ++k) {
            step(program_.instructions[k], k);
            if (options_.debug_tableau) {
                check_tableau(k);
            }
        }
        if (track_) {
            flush_frame();
            result_.frame_applied = true;
        }
        result_.final_state.multiply_scalar(std::polar(1.0, program_.global_phase));
        return std::move(result_);
    }

   private:
    StateVector &sv() {
        return result_.final_state;
    }

    void flush_frame() {
        if (!frame_.is_identity()) {
            sv().apply_pauli(frame_);
        }
        frame_ = PauliString(frame_.num_qubits());
    }

    void conjugate_frame(const CliffordGate &g) {
        frame_ = conjugate(frame_, g).unsigned_copy();
    }

    // Measures the computational basis at `pos`; `flip` is the frame's bit flip
    // there. Returns the frame-corrected outcome.
    ProgramMeasurement measure(const QubitRef &ref, std::size_t pos, bool flip) {
        ProgramMeasurement rec;
        rec.ref = ref;
        MeasurementRecord raw;
        if (mode_ == ExecMode::Sampled) {
            raw = sv().measure_sampled(pos, rng_);
            rec.outcome = raw.outcome ^ static_cast<int>(flip);
        } else {
            int logical = 0;
            if (mode_ == ExecMode::Forced) {
                if (next_forced_ >= options_.forced.size()) {
                    throw ProgramError("forced outcome list is shorter than the number of measurements");
                }
                logical = options_.forced[next_forced_++];
            }
            rec.outcome = logical;
            raw = sv().measure_forced(pos, logical ^ static_cast<int>(flip), options_.postselection_floor);
        }
        rec.raw_outcome = raw.outcome;
        rec.probability = raw.probability;
        rec.mode = raw.mode;
        result_.branch_weight *= raw.probability;
        frame_ = frame_.without_qubit(pos);
        return rec;
    }

    void step(const Instruction &inst, std::size_t index) {
        std::vector<Diagnostic> ignored;
        if (std::holds_alternative<AllocLogical>(inst)) {
            return;
        }
        if (std::holds_alternative<AllocAncilla>(inst)) {
            const double r = 1.0 / std::sqrt(2.0);
            sv().append_qubit(r, r);
            frame_ = frame_.extended(1);
        } else if (const auto *i = std::get_if<AllocMagic>(&inst)) {
            sv().append_qubit(std::cos(i->theta / 2), std::complex<double>(0.0, std::sin(i->theta / 2)));
            frame_ = frame_.extended(1);
            magic_angles_[i->ref] = i->theta;
        } else if (std::holds_alternative<AllocWork>(inst)) {
            sv().append_qubit(1.0, 0.0);
            frame_ = frame_.extended(1);
        } else if (const auto *i = std::get_if<ReleaseWork>(&inst)) {
            const std::size_t pos = tracker_.require_position(i->ref);
            if (frame_.letter(pos) != PauliLetter::I) {
                sv().apply_pauli(PauliString::single(frame_.num_qubits(), pos, frame_.letter(pos)));
                frame_.set_letter(pos, PauliLetter::I);
            }
            if (sv().probability(pos, 0) < 1.0 - 1e-9) {
                throw ProgramError(i->ref.str() + " is not back in |0> at release");
            }
            sv().measure_forced(pos, 0);
            frame_ = frame_.without_qubit(pos);
        } else if (const auto *i = std::get_if<CPauli>(&inst)) {
            const std::size_t c = tracker_.require_position(i->control), t = tracker_.require_position(i->target);
            sv().apply_controlled_pauli(c, t, i->letter);
            conjugate_frame({controlled_kind(i->letter), c, t});
        } else if (const auto *i = std::get_if<AncillaCX>(&inst)) {
            const std::size_t c = tracker_.require_position(i->control), t = tracker_.require_position(i->target);
            sv().apply_controlled_pauli(c, t, PauliLetter::X);
            conjugate_frame({CliffordKind::CX, c, t});
        } else if (const auto *i = std::get_if<SingleClifford>(&inst)) {
            const std::size_t t = tracker_.require_position(i->target);
            sv().apply(clifford_gate(i->gate), t);
            conjugate_frame({i->gate, t, 0});
        } else if (const auto *i = std::get_if<MeasureRotated>(&inst)) {
            const std::size_t pos = tracker_.require_position(i->ancilla);
            const bool fz = frame_.z(pos), fx = frame_.x(pos);
            const double angle = fz ? -i->angle : i->angle;
            sv().apply(Gate1::rx(-angle), pos);
            ProgramMeasurement rec = measure(i->ancilla, pos, fx);
            rec.effective_angle = angle;
            rec.sign_flip = fz;
            tracker_.step(inst, index, ignored);
            if (rec.outcome) {
                const PauliString p = tracker_.to_layout(i->byproduct);
                if (track_) {
                    frame_ = (frame_ * p).unsigned_copy();
                } else {
                    sv().apply_pauli(p);
                }
            }
            result_.records.push_back(rec);
            return;
        } else if (const auto *i = std::get_if<MeasureX>(&inst)) {
            const std::size_t pos = tracker_.require_position(i->ancilla);
            const bool fz = frame_.z(pos);
            std::optional<QubitRef> carrier;
            if (auto r = tracker_.row_of(i->ancilla)) {
                const PauliString &row = tracker_.tableau().generator(*r);
                for (std::size_t q = 0; q < row.num_qubits(); ++q) {
                    const QubitRef &ref = tracker_.layout()[q];
                    if (ref.kind == QubitKind::MagicAncilla && row.letter(q) == PauliLetter::X) {
                        carrier = ref;
                    }
                }
            }
            sv().apply(Gate1::h(), pos);
            ProgramMeasurement rec = measure(i->ancilla, pos, fz);
            rec.sign_flip = fz;
            tracker_.step(inst, index, ignored, rec.outcome);
            if (carrier) {
                const double theta = magic_angles_.at(*carrier);
                rec.effective_angle = rec.outcome ? -theta : theta;
                if (rec.outcome && options_.teleport == TeleportPolicy::Rerotate) {
                    const std::size_t m = tracker_.require_position(*carrier);
                    sv().apply(Gate1{GateKind::Z, 0.0}, m);
                    tracker_.conjugate({CliffordKind::Z, m, 0});
                    const double turn = frame_.z(m) ? -theta : theta;
                    sv().apply(Gate1::rx(-2 * turn), m);
                    rec.effective_angle = theta;
                }
            }
            result_.records.push_back(rec);
            return;
        } else if (const auto *i = std::get_if<Rotation>(&inst)) {
            const PauliString p = tracker_.to_layout(i->pauli);
            const double angle = (track_ && !commutes(frame_, p)) ? -i->angle : i->angle;
            sv().apply_pauli_rotation(p, angle);
        } else if (const auto *i = std::get_if<ControlledBlock>(&inst)) {
            if (track_) {
                flush_frame();
            }
            std::vector<Control> controls;
            for (const auto &c : i->controls) {
                controls.push_back({tracker_.require_position(c.ref), c.key});
            }
            for (const auto &op : i->body) {
                if (const auto *sc = std::get_if<SingleClifford>(&op)) {
                    sv().apply_controlled(controls, tracker_.require_position(sc->target),
                                          clifford_gate(sc->gate).matrix());
                } else {
                    const auto &rot = std::get<Rotation>(op);
                    sv().apply_controlled_pauli_rotation(controls, tracker_.to_layout(rot.pauli), rot.angle);
                }
            }
        }
        tracker_.step(inst, index, ignored);
    }

    void check_tableau(std::size_t index) {
        ++result_.tableau_checks;
        for (const auto &row : tracker_.tableau().generators()) {
            PauliString expected = row;
            if (!commutes(frame_, row)) {
                expected.set_phase_exponent(row.phase_exponent() + 2);
            }
            StateVector image = sv();
            image.apply_pauli(expected);
            if ((image.amplitudes() - sv().amplitudes()).cwiseAbs().maxCoeff() > options_.tableau_tolerance) {
                result_.tableau_failures.push_back("after instruction " + std::to_string(index) + " (" +
                                                   op_name(program_.instructions[index]) + "): row " +
                                                   format_generator(row) + " does not stabilize the state");
            }
        }
    }

    const QGateProgram &program_;
    const ExecOptions &options_;
    ExecMode mode_;
    detail::TableauTracker tracker_;
    PauliString frame_;
    std::mt19937_64 rng_;
    bool track_;
    std::size_t next_forced_ = 0;
    std::map<QubitRef, double> magic_angles_;
    ExecutionResult result_;
};

}  // namespace

std::vector<Diagnostic> validate(const QGateProgram &program) {
    std::vector<Diagnostic> out;
    detail::TableauTracker tracker(program);
    for (std::size_t k = 0; k < program.instructions.size(); ++k) {
        if (!finite_angles(program.instructions[k])) {
            out.push_back({k, "non-finite-angle", "angle is not finite"});
        }
        tracker.step(program.instructions[k], k, out);
    }
    tracker.finish(program.instructions.size(), out);
    return out;
}

void require_valid(const QGateProgram &program) {
    const auto diags = validate(program);
    if (!diags.empty()) {
        const auto &d = diags.front();
        throw ProgramError(d.code + " at instruction " + std::to_string(d.instruction) + ": " + d.message);
    }
}

ExecutionResult execute(const QGateProgram &program, const StateVector &initial, ExecMode mode,
                        const ExecOptions &options) {
    require_valid(program);
    return Runner(program, initial, mode, options).run();
}

std::vector<ExecutionResult> execute_all_branches(const QGateProgram &program, const StateVector &initial,
                                                  const ExecOptions &options) {
    require_valid(program);
    const std::size_t k = program.count_measurements();
    if (k > 20) {
        throw ResourceError("all-branches execution of " + std::to_string(k) + " measurements");
    }
    std::vector<ExecutionResult> branches;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        ExecOptions opt = options;
        opt.forced.assign(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            opt.forced[j] = static_cast<int>((bits >> (k - 1 - j)) & 1u);
        }
        try {
            branches.push_back(Runner(program, initial, ExecMode::Forced, opt).run());
        } catch (const PostselectionError &) {
        }
    }
    return branches;
}

double max_branch_deviation(const std::vector<ExecutionResult> &branches) {
    double worst = 0.0;
    for (std::size_t b = 1; b < branches.size(); ++b) {
        worst = std::max(worst, distance_up_to_phase(branches[b].final_state.amplitudes(),
                                                     branches.front().final_state.amplitudes()));
    }
    return worst;
}

Eigen::MatrixXcd program_unitary(const QGateProgram &program, const ExecOptions &options) {
    require_valid(program);
    const std::uint64_t dim = std::uint64_t{1} << program.n_logical;
    Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t c = 0; c < dim; ++c) {
        u.col(static_cast<Eigen::Index>(c)) =
            Runner(program, StateVector::basis(program.n_logical, c), ExecMode::PostselectZero, options)
                .run()
                .final_state.amplitudes();
    }
    return u;
}

}  // namespace qgate
