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

#include "qgate/compiler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

constexpr double kPrune = 1e-14;

bool bit_at(std::uint64_t index, std::size_t qubit, std::size_t n) {
    return (index >> (n - 1 - qubit)) & 1u;
}

void check_index(std::uint64_t i, std::size_t n) {
    if (n >= 64 || i >= (std::uint64_t{1} << n)) {
        throw DomainError("basis index " + std::to_string(i) + " outside a " + std::to_string(n) + "-qubit space");
    }
}

void check_order(int order, std::size_t steps) {
    if (order != 1 && order != 2 && order != 4) {
        throw DomainError("Trotter order must be 1, 2 or 4, got " + std::to_string(order));
    }
    if (steps < 1) {
        throw DomainError("Trotter number must be at least 1");
    }
}

void append_s2(std::vector<TrotterSlice> &out, const std::vector<std::size_t> &perm, double scale) {
    const std::size_t m = perm.size();
    for (std::size_t k = 0; k + 1 < m; ++k) {
        out.push_back({perm[k], scale / 2});
    }
    out.push_back({perm[m - 1], scale});
    for (std::size_t k = m - 1; k-- > 0;) {
        out.push_back({perm[k], scale / 2});
    }
}

}  // namespace

std::vector<TrotterSlice> trotter_schedule(std::size_t n_terms, int order, std::size_t steps, TermOrdering ordering,
                                           std::uint64_t seed) {
    check_order(order, steps);
    if (n_terms == 0) {
        throw DomainError("empty term list");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> perm(n_terms);
    std::vector<TrotterSlice> out;
    const double step = 1.0 / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        if (ordering == TermOrdering::Random) {
            std::shuffle(perm.begin(), perm.end(), rng);
        }
        switch (order) {
            case 1:
                for (std::size_t k : perm) {
                    out.push_back({k, step});
                }
                break;
            case 2:
                append_s2(out, perm, step);
                break;
            default:
                append_s2(out, perm, kSuzukiS4 * step);
                append_s2(out, perm, (1 - 2 * kSuzukiS4) * step);
                append_s2(out, perm, kSuzukiS4 * step);
                break;
        }
    }
    return out;
}

std::vector<PauliRotation> trotter_sequence(const std::vector<PauliRotation> &terms, int order, std::size_t steps,
                                            TermOrdering ordering, std::uint64_t seed) {
    std::vector<PauliRotation> out;
    for (const auto &slice : trotter_schedule(terms.size(), order, steps, ordering, seed)) {
        out.push_back({terms[slice.term].string, terms[slice.term].angle * slice.fraction});
    }
    return out;
}

QGateProgram compile_pauli_rotation(const PauliString &p, double angle, std::vector<std::string> *warnings) {
    ProgramBuilder builder(p.num_qubits(), "pauli_rotation");
    if (p.is_identity() && warnings) {
        warnings->push_back("identity Pauli string: rotation reduces to a global phase");
    }
    builder.pauli_rotation(p, angle);
    return std::move(builder).build();
}

QGateProgram compile_trotter(const PauliTermList &h, double delta, int order, std::size_t steps) {
    h.check();
    check_order(order, steps);
    if (!std::isfinite(delta)) {
        throw DomainError("time step must be finite");
    }
    const std::size_t n = h.num_qubits();
    double phase = 0.0;
    std::vector<PauliRotation> terms;
    for (const auto &t : h.terms) {
        if (std::abs(t.coefficient.imag()) > 1e-12) {
            throw DomainError("coefficient of " + t.string.str() + " is not real");
        }
        if (t.string.phase_exponent() & 1u) {
            throw DomainError("term " + t.string.str() + " is not Hermitian");
        }
        double c = t.coefficient.real();
        if (t.string.phase_exponent() == 2) {
            c = -c;
        }
        if (t.string.is_identity()) {
            phase -= c * delta;
        } else {
            terms.push_back({t.string.unsigned_copy(), -2 * c * delta});
        }
    }
    ProgramBuilder builder(n, "trotter");
    if (!terms.empty()) {
        for (const auto &r : trotter_sequence(terms, order, steps, h.ordering, h.seed)) {
            builder.pauli_rotation(r.string, r.angle);
        }
    }
    builder.add_global_phase(phase);
    return std::move(builder).build();
}

std::vector<std::size_t> TermLabels::flip_set() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] || b[k]) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<std::size_t> TermLabels::number_set() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] || d[k]) {
            out.push_back(k);
        }
    }
    return out;
}

TermLabels label_coefficients(std::uint64_t i, std::uint64_t j, std::size_t n) {
    check_index(i, n);
    check_index(j, n);
    TermLabels labels;
    labels.f.resize(n);
    labels.b.resize(n);
    labels.t.resize(n);
    labels.d.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const bool ket = bit_at(i, k, n), bra = bit_at(j, k, n);
        labels.f[k] = ket && !bra;
        labels.b[k] = !ket && bra;
        labels.t[k] = ket && bra;
        labels.d[k] = !ket && !bra;
    }
    return labels;
}

PauliTermList expand_projector_pauli(std::uint64_t i, std::uint64_t j, std::complex<double> h, std::size_t n) {
    check_index(i, n);
    check_index(j, n);
    if (n > 30) {
        throw ResourceError("projector expansion limited to 30 qubits");
    }
    if (i == j && std::abs(h.imag()) > 1e-12) {
        throw DomainError("diagonal coefficient must be real");
    }
    using C = std::complex<double>;
    const C half(0.5, 0.0), ihalf(0.0, 0.5);
    // |a><b| = sum of two letters with these weights.
    struct Pair {
        PauliLetter l0, l1;
        C w0, w1;
    };
    std::vector<Pair> local(n);
    for (std::size_t k = 0; k < n; ++k) {
        const bool a = bit_at(i, k, n), b = bit_at(j, k, n);
        if (a == b) {
            local[k] = {PauliLetter::I, PauliLetter::Z, half, a ? -half : half};
        } else {
            local[k] = {PauliLetter::X, PauliLetter::Y, half, a ? -ihalf : ihalf};
        }
    }
    PauliTermList out;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t choice = 0; choice < count; ++choice) {
        PauliString s(n);
        C w = h;
        for (std::size_t k = 0; k < n; ++k) {
            const bool second = bit_at(choice, k, n);
            s.set_letter(k, second ? local[k].l1 : local[k].l0);
            w *= second ? local[k].w1 : local[k].w0;
        }
        const double c = i == j ? w.real() : 2 * w.real();
        if (std::abs(c) > kPrune) {
            out.terms.push_back({C(c, 0.0), s});
        }
    }
    return out;
}

std::vector<WeightedPauli> diagonal_pauli_terms(const Eigen::VectorXd &diagonal) {
    const auto dim = static_cast<std::uint64_t>(diagonal.size());
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("diagonal length " + std::to_string(dim) + " is not a power of two");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(dim));
    std::vector<double> c(diagonal.data(), diagonal.data() + dim);
    for (std::uint64_t len = 1; len < dim; len <<= 1) {
        for (std::uint64_t base = 0; base < dim; base += 2 * len) {
            for (std::uint64_t k = base; k < base + len; ++k) {
                const double u = c[k], v = c[k + len];
                c[k] = u + v;
                c[k + len] = u - v;
            }
        }
    }
    std::vector<WeightedPauli> out;
    const double scale = 1.0 / static_cast<double>(dim);
    for (std::uint64_t mask = 0; mask < dim; ++mask) {
        const double value = c[mask] * scale;
        if (std::abs(value) <= kPrune) {
            continue;
        }
        PauliString s(n);
        for (std::size_t q = 0; q < n; ++q) {
            if (bit_at(mask, q, n)) {
                s.set_letter(q, PauliLetter::Z);
            }
        }
        out.push_back({{value, 0.0}, s});
    }
    return out;
}

PauliTermList sparse_to_pauli_terms(const SparseHamiltonian &h) {
    const std::size_t n = h.num_qubits();
    std::map<std::string, std::pair<PauliString, double>> merged;
    auto add = [&](const WeightedPauli &w) {
        auto [it, inserted] = merged.try_emplace(w.string.letters(), w.string, 0.0);
        it->second.second += w.coefficient.real();
    };
    for (const auto &w : diagonal_pauli_terms(h.diagonal())) {
        add(w);
    }
    for (const auto &e : h.upper_pairs()) {
        for (const auto &w : expand_projector_pauli(e.row, e.col, e.value, n).terms) {
            add(w);
        }
    }
    PauliTermList out;
    for (const auto &[key, entry] : merged) {
        if (std::abs(entry.second) > kPrune) {
            out.terms.push_back({{entry.second, 0.0}, entry.first});
        }
    }
    return out;
}

QGateProgram compile_diagonal(const Eigen::VectorXd &diagonal, double delta) {
    const auto terms = diagonal_pauli_terms(diagonal);
    const auto n = static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(diagonal.size())));
    ProgramBuilder builder(n, "diagonal");
    for (const auto &t : terms) {
        const double c = t.coefficient.real();
        if (t.string.is_identity()) {
            builder.add_global_phase(-c * delta);
        } else {
            builder.pauli_rotation(t.string, -2 * c * delta);
        }
    }
    return std::move(builder).build();
}

Fragment compile_fanout(std::size_t n_logical, const std::vector<std::size_t> &qubits, std::size_t designated) {
    if (qubits.empty()) {
        throw DomainError("fan-out needs at least one qubit");
    }
    std::vector<bool> seen(n_logical, false);
    for (std::size_t q : qubits) {
        if (q >= n_logical) {
            throw DimensionError("fan-out qubit " + std::to_string(q) + " out of range");
        }
        if (seen[q]) {
            throw DomainError("fan-out qubit " + std::to_string(q) + " repeated");
        }
        seen[q] = true;
    }
    if (designated >= n_logical || !seen[designated]) {
        throw DomainError("designated qubit is not in the fan-out set");
    }
    Fragment frag;
    for (std::size_t q : qubits) {
        if (q == designated) {
            continue;
        }
        frag.forward.push_back(ControlledBlock{{{QubitRef::logical(designated), true}},
                                               {SingleClifford{QubitRef::logical(q), CliffordKind::X}}});
    }
    frag.inverse.assign(frag.forward.rbegin(), frag.forward.rend());
    return frag;
}

void emit_ncontrolled_rotation(ProgramBuilder &builder, const std::vector<Control> &controls, std::size_t target,
                               PauliLetter letter, double angle) {
    if (controls.empty()) {
        throw DomainError("multi-controlled rotation needs at least one control");
    }
    const std::size_t n = builder.n_logical();
    std::vector<bool> seen(n, false);
    for (const auto &c : controls) {
        if (c.qubit >= n || seen[c.qubit]) {
            throw DomainError("bad control qubit " + std::to_string(c.qubit));
        }
        seen[c.qubit] = true;
    }
    if (target >= n) {
        throw DimensionError("target " + std::to_string(target) + " out of range");
    }
    if (seen[target]) {
        throw DomainError("target " + std::to_string(target) + " is among the controls");
    }
    auto body = [&]() {
        return std::vector<BodyOp>{
            Rotation{PauliString::single(builder.data_width(), target, letter), angle},
        };
    };
    if (controls.size() == 1) {
        builder.controlled({{QubitRef::logical(controls[0].qubit), controls[0].key}}, body());
        return;
    }
    for (const auto &c : controls) {
        if (!c.key) {
            builder.clifford(QubitRef::logical(c.qubit), CliffordKind::X);
        }
    }
    auto toffoli = [&](const QubitRef &a, const QubitRef &b, const QubitRef &w) {
        builder.controlled({{a, true}, {b, true}}, {SingleClifford{w, CliffordKind::X}});
    };
    std::vector<QubitRef> work;
    QubitRef prev = QubitRef::logical(controls[0].qubit);
    for (std::size_t k = 1; k < controls.size(); ++k) {
        const QubitRef w = builder.alloc_work();
        toffoli(prev, QubitRef::logical(controls[k].qubit), w);
        work.push_back(w);
        prev = w;
    }
    builder.controlled({{prev, true}}, body());
    for (std::size_t k = controls.size() - 1; k >= 1; --k) {
        const QubitRef before = k == 1 ? QubitRef::logical(controls[0].qubit) : work[k - 2];
        toffoli(before, QubitRef::logical(controls[k].qubit), work[k - 1]);
    }
    for (auto it = work.rbegin(); it != work.rend(); ++it) {
        builder.release_work(*it);
    }
    for (const auto &c : controls) {
        if (!c.key) {
            builder.clifford(QubitRef::logical(c.qubit), CliffordKind::X);
        }
    }
}

QGateProgram compile_ncontrolled_rotation(std::size_t n_logical, const std::vector<Control> &controls,
                                          std::size_t target, double angle, PauliLetter letter) {
    if (letter == PauliLetter::I) {
        throw DomainError("rotation letter must be X, Y or Z");
    }
    ProgramBuilder builder(n_logical, "ncontrolled_rotation");
    emit_ncontrolled_rotation(builder, controls, target, letter, angle);
    return std::move(builder).build();
}

QGateProgram compile_direct_term(std::uint64_t i, std::uint64_t j, double h, double delta, std::size_t n,
                                 const DirectOptions &options) {
    if (i == j) {
        throw DomainError("diagonal term: use compile_diagonal");
    }
    if (!std::isfinite(h) || !std::isfinite(delta)) {
        throw DomainError("coefficient and time step must be finite");
    }
    const TermLabels labels = label_coefficients(i, j, n);
    const auto flips = labels.flip_set();
    const std::size_t designated = flips.front();
    std::vector<Control> controls;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == designated) {
            continue;
        }
        if (labels.t[k] || labels.d[k]) {
            controls.push_back({k, static_cast<bool>(labels.t[k])});
        } else {
            // After the cascade qubit k holds its bit XOR the designated bit,
            // which is the same for both basis states.
            controls.push_back({k, bit_at(i, k, n) != bit_at(i, designated, n)});
        }
    }
    const double theta = delta * h;
    ProgramBuilder builder(n, "direct_term");
    const Fragment fan = compile_fanout(n, flips, designated);
    for (const auto &inst : fan.forward) {
        const auto &b = std::get<ControlledBlock>(inst);
        builder.controlled(b.controls, b.body);
    }
    if (controls.empty()) {
        builder.rotation(PauliString::single(n, designated, PauliLetter::X), -2 * theta);
    } else if (options.toffoli_ladder) {
        emit_ncontrolled_rotation(builder, controls, designated, PauliLetter::X, -2 * theta);
    } else {
        std::vector<RefControl> refs;
        for (const auto &c : controls) {
            refs.push_back({QubitRef::logical(c.qubit), c.key});
        }
        builder.controlled(std::move(refs), {Rotation{PauliString::single(n, designated, PauliLetter::X), -2 * theta}});
    }
    for (const auto &inst : fan.inverse) {
        const auto &b = std::get<ControlledBlock>(inst);
        builder.controlled(b.controls, b.body);
    }
    return std::move(builder).build();
}

QGateProgram compile_sparse(const SparseHamiltonian &h, double delta, int order, std::size_t steps,
                            TermOrdering ordering, std::uint64_t seed, const DirectOptions &options) {
    check_order(order, steps);
    const std::size_t n = h.num_qubits();
    const Eigen::VectorXd diag = h.diagonal();
    const auto pairs = h.upper_pairs();
    for (const auto &e : pairs) {
        if (std::abs(e.value.imag()) > 1e-12) {
            throw UnsupportedError("complex off-diagonal entry (" + std::to_string(e.row) + ", " +
                                   std::to_string(e.col) + ") is not supported by the direct routine");
        }
    }
    const bool has_diag = diag.cwiseAbs().maxCoeff() > 0.0;
    const std::size_t n_terms = pairs.size() + (has_diag ? 1 : 0);
    ProgramBuilder builder(n, "sparse");
    if (n_terms == 0) {
        return std::move(builder).build();
    }
    for (const auto &slice : trotter_schedule(n_terms, order, steps, ordering, seed)) {
        const double dt = delta * slice.fraction;
        if (has_diag && slice.term == 0) {
            builder.append(compile_diagonal(diag, dt));
        } else {
            const auto &e = pairs[slice.term - (has_diag ? 1 : 0)];
            builder.append(compile_direct_term(e.row, e.col, e.value.real(), dt, n, options));
        }
    }
    auto program = std::move(builder).build();
    program.name = "sparse";
    return program;
}

}  // namespace qgate
