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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qgate/errors.hpp"
#include "qgate/executor.hpp"

using namespace qgate;
using std::numbers::pi;

namespace {

std::size_t count_cpauli(const QGateProgram &p, PauliLetter letter) {
    std::size_t n = 0;
    for (const auto &inst : p.instructions) {
        if (const auto *c = std::get_if<CPauli>(&inst); c && c->letter == letter) {
            ++n;
        }
    }
    return n;
}

Eigen::MatrixXcd rotation_set_matrix(std::size_t n, const RotationSet &set) {
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim) * std::polar(1.0, set.global_phase);
    for (const auto &r : set.rotations) {
        u = oracle::rotation(r.string.letters(), r.angle) * u;
    }
    return u;
}

Eigen::MatrixXcd random_real_symmetric(std::size_t n, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = i; j < dim; ++j) {
            h(i, j) = h(j, i) = u(rng);
        }
    }
    return h;
}

}  // namespace

TEST(compile_pauli_rotation, five_qubit_graph) {
    const double phi = 0.731;
    const auto p = compile_pauli_rotation(PauliString::from_str("ZIXZX"), phi);
    EXPECT_EQ(p.count_gate_ancillas(), 1u);
    EXPECT_EQ(count_cpauli(p, PauliLetter::Z), 2u);
    EXPECT_EQ(count_cpauli(p, PauliLetter::X), 2u);
    const auto &m = std::get<MeasureRotated>(p.instructions.back());
    EXPECT_EQ(m.byproduct.str(), "+ZIXZX");
    EXPECT_DOUBLE_EQ(m.angle, phi);
    EXPECT_LT(oracle::max_abs(program_unitary(p), oracle::rotation("ZIXZX", phi)), 1e-10);
}

TEST(compile_pauli_rotation, single_z) {
    const auto p = compile_pauli_rotation(PauliString::from_str("Z"), -1.2);
    EXPECT_EQ(p.count_gate_ancillas(), 1u);
    EXPECT_EQ(count_cpauli(p, PauliLetter::Z), 1u);
    std::mt19937_64 rng(3);
    const StateVector psi = StateVector::random(1, rng);
    StateVector ref = psi;
    ref.apply_pauli_rotation(PauliString::from_str("Z"), -1.2);
    const auto out = execute(p, psi, ExecMode::PostselectZero);
    EXPECT_LT((out.final_state.amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(compile_pauli_rotation, identity_string_is_global_phase) {
    std::vector<std::string> warnings;
    const auto p = compile_pauli_rotation(PauliString::from_str("III"), 0.5, &warnings);
    EXPECT_EQ(p.instructions.size(), 1u);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_DOUBLE_EQ(p.global_phase, 0.25);
}

TEST(compile_pauli_rotation, every_sampled_branch_is_exact) {
    const auto prog = compile_pauli_rotation(PauliString::from_str("XYZ"), 0.4);
    std::mt19937_64 rng(11);
    const auto psi = StateVector::random(3, rng);
    const auto branches = execute_all_branches(prog, psi);
    ASSERT_EQ(branches.size(), 2u);
    EXPECT_LT(max_branch_deviation(branches), 1e-12);
}

TEST(trotter_sequence, first_order) {
    const std::vector<PauliRotation> terms{{PauliString::from_str("XI"), 1.0}, {PauliString::from_str("IZ"), 2.0}};
    const auto seq = trotter_sequence(terms, 1, 2);
    ASSERT_EQ(seq.size(), 4u);
    EXPECT_EQ(seq[0].string.letters(), "XI");
    EXPECT_DOUBLE_EQ(seq[0].angle, 0.5);
    EXPECT_EQ(seq[1].string.letters(), "IZ");
    EXPECT_DOUBLE_EQ(seq[1].angle, 1.0);
    EXPECT_EQ(seq[2].string.letters(), "XI");
    EXPECT_EQ(seq[3].string.letters(), "IZ");
}

TEST(trotter_sequence, second_order_palindrome) {
    const std::vector<PauliRotation> terms{{PauliString::from_str("X"), 1.0}, {PauliString::from_str("Z"), 1.0}};
    const auto seq = trotter_sequence(terms, 2, 1);
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(seq[0].string.letters(), "X");
    EXPECT_DOUBLE_EQ(seq[0].angle, 0.5);
    EXPECT_EQ(seq[1].string.letters(), "Z");
    EXPECT_DOUBLE_EQ(seq[1].angle, 1.0);
    EXPECT_EQ(seq[2].string.letters(), "X");
    EXPECT_DOUBLE_EQ(seq[2].angle, 0.5);
}

TEST(trotter_sequence, fourth_order_is_three_second_order_blocks) {
    for (std::size_t m : {1u, 2u, 5u}) {
        for (std::size_t tau : {1u, 3u}) {
            const auto s2 = trotter_schedule(m, 2, tau);
            const auto s4 = trotter_schedule(m, 4, tau);
            EXPECT_EQ(s4.size(), 3 * s2.size());
            EXPECT_EQ(s2.size(), tau * (2 * m - 1));
            // Every term is applied for exactly its full duration.
            std::vector<double> total(m, 0.0);
            for (const auto &s : s4) {
                total[s.term] += s.fraction;
            }
            for (double t : total) {
                EXPECT_NEAR(t, 1.0, 1e-12);
            }
        }
    }
}

TEST(trotter_sequence, rejects_bad_input) {
    EXPECT_THROW(trotter_schedule(0, 1, 1), DomainError);
    EXPECT_THROW(trotter_schedule(2, 3, 1), DomainError);
    EXPECT_THROW(trotter_schedule(2, 1, 0), DomainError);
}

TEST(compile_trotter, single_term_is_exact) {
    PauliTermList h;
    h.terms.push_back({0.7, PauliString::from_str("XZ")});
    for (std::size_t tau : {1u, 4u}) {
        const auto u = program_unitary(compile_trotter(h, 0.9, 1, tau));
        EXPECT_LT(oracle::max_abs(u, oracle::evolve(0.7 * oracle::pauli("XZ"), 0.9)), 1e-10);
    }
}

TEST(compile_trotter, identity_term_is_global_phase) {
    PauliTermList h;
    h.terms.push_back({-0.5, PauliString::from_str("II")});
    h.terms.push_back({0.25, PauliString::from_str("ZZ")});
    const auto prog = compile_trotter(h, 0.3, 2, 3);
    EXPECT_NEAR(prog.global_phase, 0.15, 1e-15);
    const Eigen::MatrixXcd dense = -0.5 * oracle::pauli("II") + 0.25 * oracle::pauli("ZZ");
    EXPECT_LT(oracle::max_abs(program_unitary(prog), oracle::evolve(dense, 0.3)), 1e-10);
}

TEST(compile_trotter, random_ordering_is_reproducible) {
    PauliTermList h;
    for (const char *s : {"XX", "ZI", "IZ", "YY"}) {
        h.terms.push_back({0.3, PauliString::from_str(s)});
    }
    h.ordering = TermOrdering::Random;
    h.seed = 42;
    EXPECT_EQ(compile_trotter(h, 1.0, 1, 5), compile_trotter(h, 1.0, 1, 5));
    PauliTermList g = h;
    g.ordering = TermOrdering::AsGiven;
    EXPECT_NE(compile_trotter(h, 1.0, 1, 5), compile_trotter(g, 1.0, 1, 5));
}

TEST(compile_trotter, error_shrinks_with_steps) {
    PauliTermList h;
    h.terms.push_back({0.8, PauliString::from_str("XI")});
    h.terms.push_back({0.6, PauliString::from_str("ZZ")});
    h.terms.push_back({0.4, PauliString::from_str("IY")});
    const Eigen::MatrixXcd dense = 0.8 * oracle::pauli("XI") + 0.6 * oracle::pauli("ZZ") + 0.4 * oracle::pauli("IY");
    const auto exact = oracle::evolve(dense, 1.0);
    for (int order : {1, 2, 4}) {
        const double e4 = (program_unitary(compile_trotter(h, 1.0, order, 4)) - exact).norm();
        const double e8 = (program_unitary(compile_trotter(h, 1.0, order, 8)) - exact).norm();
        EXPECT_LT(e8, e4) << "order " << order;
        EXPECT_NEAR(std::log2(e4 / e8), order, order == 4 ? 0.5 : 0.2) << "order " << order;
    }
}

TEST(label_coefficients, number_example) {
    // |10><10|: qubit 0 is 1 in both (t), qubit 1 is 0 in both (d).
    const auto l = label_coefficients(0b10, 0b10, 2);
    EXPECT_TRUE(l.t[0]);
    EXPECT_TRUE(l.d[1]);
    EXPECT_FALSE(l.f[0] || l.f[1] || l.b[0] || l.b[1] || l.t[1] || l.d[0]);
}

TEST(label_coefficients, flip_example) {
    const auto l = label_coefficients(0b1, 0b0, 1);
    EXPECT_TRUE(l.f[0]);
    EXPECT_FALSE(l.b[0]);
    const auto r = label_coefficients(0b0, 0b1, 1);
    EXPECT_TRUE(r.b[0]);
}

TEST(label_coefficients, partition_is_one_hot) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        for (std::uint64_t i = 0; i < dim; ++i) {
            for (std::uint64_t j = 0; j < dim; ++j) {
                const auto l = label_coefficients(i, j, n);
                for (std::size_t k = 0; k < n; ++k) {
                    ASSERT_EQ(int(l.f[k]) + int(l.b[k]) + int(l.t[k]) + int(l.d[k]), 1);
                }
                EXPECT_EQ(l.flip_set().size() + l.number_set().size(), n);
            }
        }
    }
    EXPECT_THROW(label_coefficients(4, 0, 2), DomainError);
}

TEST(expand_projector_pauli, zero_zero) {
    const auto terms = expand_projector_pauli(0, 0, 1.0, 2);
    ASSERT_EQ(terms.terms.size(), 4u);
    for (const auto &t : terms.terms) {
        EXPECT_NEAR(t.coefficient.real(), 0.25, 1e-15);
    }
}

TEST(expand_projector_pauli, zero_zero_to_zero_one) {
    const double h = 0.8;
    const auto terms = expand_projector_pauli(0b00, 0b01, h, 2);
    ASSERT_EQ(terms.terms.size(), 2u);
    EXPECT_EQ(terms.terms[0].string.letters(), "IX");
    EXPECT_EQ(terms.terms[1].string.letters(), "ZX");
    EXPECT_NEAR(terms.terms[0].coefficient.real(), h / 2, 1e-15);
    EXPECT_NEAR(terms.terms[1].coefficient.real(), h / 2, 1e-15);
}

TEST(expand_projector_pauli, two_flip) {
    const auto terms = expand_projector_pauli(0b01, 0b10, 1.0, 2);
    ASSERT_EQ(terms.terms.size(), 2u);
    EXPECT_EQ(terms.terms[0].string.letters(), "XX");
    EXPECT_EQ(terms.terms[1].string.letters(), "YY");
    EXPECT_NEAR(terms.terms[0].coefficient.real(), 0.5, 1e-15);
    EXPECT_NEAR(terms.terms[1].coefficient.real(), 0.5, 1e-15);
}

TEST(expand_projector_pauli, matches_dense_projectors) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint64_t> idx(0, 7);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 40; ++trial) {
        const auto i = idx(rng), j = idx(rng);
        const std::complex<double> h = i == j ? std::complex<double>(u(rng), 0) : std::complex<double>(u(rng), u(rng));
        Eigen::MatrixXcd expect = h * oracle::ketbra(i, j, 3);
        if (i != j) {
            expect += std::conj(h) * oracle::ketbra(j, i, 3);
        }
        const auto terms = expand_projector_pauli(i, j, h, 3);
        EXPECT_LT(oracle::max_abs(terms.to_dense(), expect), 1e-12);
        for (const auto &t : terms.terms) {
            if (i == j) {
                EXPECT_EQ(t.string.letters().find_first_of("XY"), std::string::npos);
            }
        }
    }
}

TEST(compile_diagonal, constant_is_global_phase) {
    Eigen::VectorXd d = Eigen::VectorXd::Constant(4, 1.5);
    const auto prog = compile_diagonal(d, 0.2);
    EXPECT_EQ(prog.instructions.size(), 1u);
    EXPECT_NEAR(prog.global_phase, -0.3, 1e-15);
}

TEST(compile_diagonal, pauli_z) {
    Eigen::VectorXd d(2);
    d << 1, -1;
    const auto prog = compile_diagonal(d, 0.4);
    EXPECT_EQ(prog.count_gate_ancillas(), 1u);
    EXPECT_NEAR(std::get<MeasureRotated>(prog.instructions.back()).angle, -0.8, 1e-15);
    EXPECT_LT(oracle::max_abs(program_unitary(prog), oracle::evolve(oracle::pauli("Z"), 0.4)), 1e-12);
}

TEST(compile_diagonal, random_three_qubits) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2, 2);
    Eigen::VectorXd d(8);
    for (auto &x : d) {
        x = u(rng);
    }
    const Eigen::MatrixXcd h = d.cast<std::complex<double>>().asDiagonal();
    EXPECT_LT(oracle::max_abs(program_unitary(compile_diagonal(d, 0.7)), oracle::evolve(h, 0.7)), 1e-10);
    EXPECT_THROW(compile_diagonal(Eigen::VectorXd::Zero(6), 1.0), DimensionError);
}

TEST(compile_fanout, cascade_shape) {
    const auto frag = compile_fanout(4, {0, 1, 2, 3}, 0);
    ASSERT_EQ(frag.forward.size(), 3u);
    for (const auto &inst : frag.forward) {
        const auto &b = std::get<ControlledBlock>(inst);
        ASSERT_EQ(b.controls.size(), 1u);
        EXPECT_EQ(b.controls[0].ref, QubitRef::logical(0));
    }
    EXPECT_TRUE(compile_fanout(2, {1}, 1).forward.empty());
    EXPECT_THROW(compile_fanout(2, {}, 0), DomainError);
    EXPECT_THROW(compile_fanout(3, {0, 1}, 2), DomainError);

    QGateProgram prog;
    prog.n_logical = 4;
    prog.instructions.push_back(AllocLogical{4});
    prog.instructions.insert(prog.instructions.end(), frag.forward.begin(), frag.forward.end());
    prog.instructions.insert(prog.instructions.end(), frag.inverse.begin(), frag.inverse.end());
    EXPECT_LT(oracle::max_abs(program_unitary(prog), Eigen::MatrixXcd::Identity(16, 16)), 1e-12);
}

TEST(compile_ncontrolled_rotation, three_controls) {
    const auto prog = compile_ncontrolled_rotation(4, {{0, true}, {1, true}, {2, true}}, 3, 0.9);
    const auto c = cost(prog);
    EXPECT_EQ(c.toffoli_count, 4u);
    EXPECT_EQ(c.work_qubits, 2u);
    const auto expect = oracle::controlled(4, {{0, true}, {1, true}, {2, true}}, oracle::rotation("IIIX", 0.9));
    EXPECT_LT(oracle::max_abs(program_unitary(prog), expect), 1e-10);
}

TEST(compile_ncontrolled_rotation, single_control) {
    const auto prog = compile_ncontrolled_rotation(2, {{0, true}}, 1, 0.3);
    EXPECT_EQ(cost(prog).toffoli_count, 0u);
    EXPECT_EQ(prog.n_work, 0u);
    EXPECT_THROW(compile_ncontrolled_rotation(2, {{1, true}}, 1, 0.3), DomainError);
}

TEST(compile_ncontrolled_rotation, mixed_keys_match_native) {
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::uint64_t keys = 0; keys < (std::uint64_t{1} << (n - 1)); ++keys) {
            std::vector<Control> controls;
            std::vector<std::pair<std::size_t, bool>> ocontrols;
            for (std::size_t q = 0; q + 1 < n; ++q) {
                const bool key = (keys >> q) & 1u;
                controls.push_back({q, key});
                ocontrols.push_back({q, key});
            }
            const auto prog = compile_ncontrolled_rotation(n, controls, n - 1, -0.66, PauliLetter::Y);
            const auto expect =
                oracle::controlled(n, ocontrols, oracle::rotation(std::string(n - 1, 'I') + "Y", -0.66));
            EXPECT_LT(oracle::max_abs(program_unitary(prog), expect), 1e-10) << "n=" << n << " keys=" << keys;
        }
    }
}

TEST(compile_direct_term, single_qubit_x) {
    const double h = 0.7, delta = 0.45;
    const auto prog = compile_direct_term(0, 1, h, delta, 1);
    ASSERT_EQ(prog.instructions.size(), 2u);
    const auto &r = std::get<Rotation>(prog.instructions[1]);
    EXPECT_NEAR(r.angle, -2 * h * delta, 1e-15);
    EXPECT_LT(oracle::max_abs(program_unitary(prog), oracle::evolve(h * oracle::pauli("X"), delta)), 1e-12);
}

TEST(compile_direct_term, number_and_flip_example) {
    // n_1 m_2 s+_3 s-_4: ket 1001, bra 1010.
    const auto prog = compile_direct_term(0b1001, 0b1010, 1.0, 0.3, 4);
    std::size_t cnots = 0;
    const ControlledBlock *rot = nullptr;
    for (const auto &inst : prog.instructions) {
        if (const auto *b = std::get_if<ControlledBlock>(&inst)) {
            if (std::holds_alternative<Rotation>(b->body.front())) {
                rot = b;
            } else {
                ++cnots;
            }
        }
    }
    EXPECT_EQ(cnots, 2u);
    ASSERT_NE(rot, nullptr);
    ASSERT_GE(rot->controls.size(), 2u);
    EXPECT_EQ(rot->controls[0].ref, QubitRef::logical(0));
    EXPECT_TRUE(rot->controls[0].key);
    EXPECT_EQ(rot->controls[1].ref, QubitRef::logical(1));
    EXPECT_FALSE(rot->controls[1].key);
    const Eigen::MatrixXcd h = oracle::ketbra(0b1001, 0b1010, 4) + oracle::ketbra(0b1010, 0b1001, 4);
    EXPECT_LT(oracle::max_abs(program_unitary(prog), oracle::evolve(h, 0.3)), 1e-10);
}

TEST(compile_direct_term, random_terms_are_exact) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<std::uint64_t> idx(0, 15);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        std::uint64_t i = idx(rng), j = idx(rng);
        if (i == j) {
            continue;
        }
        const double h = u(rng), delta = u(rng);
        const Eigen::MatrixXcd dense = h * (oracle::ketbra(i, j, 4) + oracle::ketbra(j, i, 4));
        const auto expect = oracle::evolve(dense, delta);
        EXPECT_LT(oracle::max_abs(program_unitary(compile_direct_term(i, j, h, delta, 4)), expect), 1e-10);
        DirectOptions ladder;
        ladder.toffoli_ladder = true;
        EXPECT_LT(oracle::max_abs(program_unitary(compile_direct_term(i, j, h, delta, 4, ladder)), expect), 1e-10);
    }
    EXPECT_THROW(compile_direct_term(3, 3, 1.0, 1.0, 2), DomainError);
}

TEST(compile_sparse, pauli_x_is_exact) {
    SparseHamiltonian h(1);
    h.add(0, 1, 1.0);
    const auto prog = compile_sparse(h, 0.8, 1, 1);
    EXPECT_LT(oracle::max_abs(program_unitary(prog), oracle::evolve(oracle::pauli("X"), 0.8)), 1e-12);
}

TEST(compile_sparse, complex_offdiagonal_is_unsupported) {
    SparseHamiltonian h(1);
    h.add(0, 1, {0.0, 1.0});
    EXPECT_THROW(compile_sparse(h, 1.0, 1, 1), UnsupportedError);
}

TEST(compile_sparse, converges_like_pauli_route) {
    const auto h = random_sparse_hermitian(3, 5, 17);
    const auto exact = oracle::evolve(h.to_dense(), 1.0);
    const double direct = (program_unitary(compile_sparse(h, 1.0, 1, 64)) - exact).norm();
    const double pauli = (program_unitary(compile_trotter(sparse_to_pauli_terms(h), 1.0, 1, 64)) - exact).norm();
    EXPECT_LT(direct, 0.1);
    EXPECT_LT(pauli, 0.1);
    EXPECT_LT(oracle::max_abs(sparse_to_pauli_terms(h).to_dense(), h.to_dense()), 1e-12);
}

TEST(controlled_phase_rotations, cz_set) {
    const auto set = controlled_phase_rotations(2, {{0, true}}, {1}, pi);
    ASSERT_EQ(set.rotations.size(), 3u);
    EXPECT_EQ(set.rotations[0].string.letters(), "ZI");
    EXPECT_NEAR(set.rotations[0].angle, -pi / 2, 1e-15);
    EXPECT_EQ(set.rotations[1].string.letters(), "IZ");
    EXPECT_NEAR(set.rotations[1].angle, -pi / 2, 1e-15);
    EXPECT_EQ(set.rotations[2].string.letters(), "ZZ");
    EXPECT_NEAR(set.rotations[2].angle, pi / 2, 1e-15);
    EXPECT_NEAR(set.global_phase, pi / 4, 1e-15);
    const Eigen::MatrixXcd cz = Eigen::Vector4cd(1, 1, 1, -1).asDiagonal();
    EXPECT_LT(oracle::max_abs(rotation_set_matrix(2, set), cz), 1e-12);
}

TEST(controlled_phase_rotations, ccz_set) {
    const auto set = controlled_phase_rotations(3, {{0, true}, {1, true}}, {2}, pi);
    ASSERT_EQ(set.rotations.size(), 7u);
    for (std::size_t k = 0; k < 7; ++k) {
        const auto w = set.rotations[k].string.weight();
        EXPECT_EQ(w, k < 3 ? 1u : k < 6 ? 2u : 3u);
        EXPECT_NEAR(std::abs(set.rotations[k].angle), pi / 4, 1e-15);
        // Odd-weight strings carry -pi/4, even-weight +pi/4.
        EXPECT_EQ(set.rotations[k].angle < 0, w % 2 == 1);
    }
    Eigen::VectorXcd d = Eigen::VectorXcd::Ones(8);
    d[7] = -1;
    EXPECT_LT(oracle::max_abs(rotation_set_matrix(3, set), d.asDiagonal().toDenseMatrix()), 1e-12);
}

TEST(controlled_phase_rotations, one_control_two_targets) {
    for (bool key : {false, true}) {
        const double phi = 0.77;
        const auto set = controlled_phase_rotations(3, {{0, key}}, {1, 2}, phi);
        EXPECT_EQ(set.rotations.size(), 7u);
        Eigen::VectorXcd d = Eigen::VectorXcd::Ones(8);
        d[key ? 7 : 3] = std::polar(1.0, phi);
        EXPECT_LT(oracle::max_abs(rotation_set_matrix(3, set), d.asDiagonal().toDenseMatrix()), 1e-12);
        const auto prog = compile_controlled_phase_exponential(3, {{0, key}}, {1, 2}, phi);
        EXPECT_LT(oracle::max_abs(program_unitary(prog), d.asDiagonal().toDenseMatrix()), 1e-10);
    }
    EXPECT_THROW(controlled_phase_rotations(2, {{0, true}}, {0}, 1.0), DomainError);
}

TEST(controlled_phase_rotations, multi_controlled_z_closure) {
    for (std::size_t total = 2; total <= 4; ++total) {
        for (std::size_t m = 1; m < total; ++m) {
            const std::size_t n = total - m;
            std::vector<Control> controls;
            std::vector<std::size_t> targets;
            for (std::size_t q = 0; q < n; ++q) {
                controls.push_back({q, true});
            }
            for (std::size_t q = n; q < total; ++q) {
                targets.push_back(q);
            }
            const auto prog = compile_controlled_phase_exponential(total, controls, targets, pi);
            Eigen::VectorXcd d = Eigen::VectorXcd::Ones(Eigen::Index{1} << total);
            d[d.size() - 1] = -1;
            const Eigen::MatrixXcd mcz = d.asDiagonal();
            const auto u = program_unitary(prog);
            EXPECT_LT(oracle::max_abs(u, mcz), 1e-10);
            if (m == 1) {
                const auto h = oracle::on_qubit(total, total - 1, oracle::hadamard());
                std::vector<std::pair<std::size_t, bool>> oc;
                for (std::size_t q = 0; q < n; ++q) {
                    oc.push_back({q, true});
                }
                const auto mcx = oracle::controlled(total, oc, oracle::on_qubit(total, total - 1, oracle::letter('X')));
                EXPECT_LT(oracle::max_abs(h * u * h, mcx), 1e-10);
            }
        }
    }
}

TEST(controlled_zrotation_rotations, single_control_single_target) {
    const double phi = 0.9;
    const auto set = controlled_zrotation_rotations(2, {{0, true}}, {1}, phi);
    ASSERT_EQ(set.rotations.size(), 2u);
    EXPECT_EQ(set.rotations[0].string.letters(), "IZ");
    EXPECT_NEAR(set.rotations[0].angle, -phi / 2, 1e-15);
    EXPECT_EQ(set.rotations[1].string.letters(), "ZZ");
    EXPECT_NEAR(set.rotations[1].angle, phi / 2, 1e-15);
    const auto prog = compile_controlled_zrotation_exponential(2, {{0, true}}, {1}, phi);
    const auto c = cost(prog);
    EXPECT_EQ(c.gate_ancillas, 2u);
    EXPECT_EQ(c.entangling_gates, 3u);
    const auto expect = oracle::controlled(2, {{0, true}}, oracle::rotation("IZ", -phi));
    EXPECT_LT(oracle::max_abs(program_unitary(prog), expect), 1e-10);
}

TEST(controlled_zrotation_rotations, one_control_two_targets) {
    const double phi = -1.3;
    const auto set = controlled_zrotation_rotations(3, {{0, false}}, {1, 2}, phi);
    EXPECT_EQ(set.rotations.size(), 4u);
    for (const auto &r : set.rotations) {
        EXPECT_NEAR(std::abs(r.angle), std::abs(phi) / 2, 1e-15);
    }
    const auto expect = oracle::controlled(3, {{0, false}}, oracle::rotation("IZI", -phi) * oracle::rotation("IIZ", -phi));
    EXPECT_LT(oracle::max_abs(rotation_set_matrix(3, set), expect), 1e-12);
    EXPECT_TRUE(controlled_zrotation_rotations(3, {{0, true}}, {1, 2}, 0.0).rotations.empty());
}

TEST(controlled_rotation_set, arbitrary_body) {
    const auto set = controlled_rotation_set({{0, true}, {3, false}}, PauliString::from_str("IXYI"), 0.61);
    const auto expect = oracle::controlled(4, {{0, true}, {3, false}}, oracle::rotation("IXYI", 0.61));
    EXPECT_LT(oracle::max_abs(rotation_set_matrix(4, set), expect), 1e-12);
}

TEST(controlled_clifford_set, pauli_and_phase_bodies) {
    for (auto [kind, ch] : {std::pair{CliffordKind::X, 'X'}, {CliffordKind::Y, 'Y'}, {CliffordKind::Z, 'Z'}}) {
        const auto set = controlled_clifford_set(3, {{0, true}, {1, false}}, 2, kind);
        const auto expect = oracle::controlled(3, {{0, true}, {1, false}}, oracle::on_qubit(3, 2, oracle::letter(ch)));
        EXPECT_LT(oracle::max_abs(rotation_set_matrix(3, set), expect), 1e-12) << ch;
    }
    Eigen::Matrix2cd s = Eigen::Vector2cd(1, std::complex<double>(0, 1)).asDiagonal();
    const auto set = controlled_clifford_set(2, {{0, true}}, 1, CliffordKind::S);
    EXPECT_LT(oracle::max_abs(rotation_set_matrix(2, set), oracle::controlled(2, {{0, true}}, oracle::on_qubit(2, 1, s))),
              1e-12);
    EXPECT_THROW(controlled_clifford_set(2, {{0, true}}, 1, CliffordKind::H), UnsupportedError);
}

TEST(cost, cnot) {
    const auto prog = compile_cnot(2, 0, 1);
    const auto c = cost(prog);
    EXPECT_EQ(c.gate_ancillas, 3u);
    EXPECT_EQ(c.entangling_gates, 4u);
    Eigen::MatrixXcd cx = Eigen::MatrixXcd::Zero(4, 4);
    cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1;
    EXPECT_LT(oracle::max_abs(program_unitary(prog), cx), 1e-10);
}

TEST(cost, toffoli_with_transfer) {
    const auto prog = compile_toffoli(3, 0, 1, 2);
    const auto c = cost(prog);
    EXPECT_EQ(c.gate_ancillas, 7u);
    EXPECT_EQ(c.entangling_gates, 9u);
    EXPECT_EQ(c.ancilla_ancilla_gates, 2u);
    const auto expect = oracle::controlled(3, {{0, true}, {1, true}}, oracle::on_qubit(3, 2, oracle::letter('X')));
    EXPECT_LT(oracle::max_abs(program_unitary(prog), expect), 1e-10);
    const auto plain = compile_toffoli(3, 0, 1, 2, false);
    EXPECT_EQ(cost(plain).entangling_gates, 12u);
    EXPECT_LT(oracle::max_abs(program_unitary(plain), expect), 1e-10);
    std::mt19937_64 rng(2);
    EXPECT_LT(max_branch_deviation(execute_all_branches(prog, StateVector::random(3, rng))), 1e-10);
}

TEST(cost, empty_program) {
    EXPECT_EQ(cost(ProgramBuilder(2).build()), CostReport{});
}

TEST(lower, removes_macros_and_keeps_action) {
    for (auto strategy : {LowerStrategy::RotationSets, LowerStrategy::ToffoliLadder}) {
        for (bool ladder : {false, true}) {
            DirectOptions opts;
            opts.toffoli_ladder = ladder;
            const auto prog = compile_direct_term(0b0110, 0b1011, 0.8, 0.5, 4, opts);
            const auto low = lower(prog, strategy);
            EXPECT_FALSE(low.has_macros());
            EXPECT_LT(oracle::max_abs(program_unitary(low), program_unitary(prog)), 1e-10);
            std::mt19937_64 rng(4);
            ExecOptions eo;
            eo.seed = 99;
            const auto psi = StateVector::random(4, rng);
            const auto a = execute(low, psi, ExecMode::Sampled, eo);
            const auto b = execute(prog, psi, ExecMode::PostselectZero);
            EXPECT_LT((a.final_state.amplitudes() - b.final_state.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(add_control, trotter_program) {
    PauliTermList h;
    h.terms.push_back({0.4, PauliString::from_str("II")});
    h.terms.push_back({0.7, PauliString::from_str("XY")});
    h.terms.push_back({-0.2, PauliString::from_str("ZI")});
    const auto u = compile_trotter(h, 0.6, 2, 2);
    const auto wide = embed(u, 3, 1);
    const auto cu = add_control(wide, 0);
    const auto expect = oracle::controlled(3, {{0, true}}, program_unitary(wide));
    EXPECT_LT(oracle::max_abs(program_unitary(cu), expect), 1e-10);
    EXPECT_THROW(add_control(wide, 1), DomainError);
}

TEST(add_control, macro_and_clifford_program) {
    const auto cnot = compile_cnot(2, 0, 1);
    const auto direct = compile_direct_term(0b01, 0b10, 0.5, 0.9, 2);
    for (const auto &p : {cnot, direct, lower(direct)}) {
        const auto wide = embed(p, 3, 1);
        const auto cu = add_control(wide, 0);
        const auto expect = oracle::controlled(3, {{0, true}}, program_unitary(wide));
        EXPECT_LT(oracle::max_abs(program_unitary(cu), expect), 1e-10) << p.name;
    }
}

TEST(add_control, teleported_gadgets_are_unsupported) {
    ProgramBuilder b(2);
    const auto a = b.entangle(PauliString::from_str("ZZ"));
    const auto m = b.teleport_rotation(a, 0.3);
    b.measure_rotated(m, 0.0);
    EXPECT_THROW(add_control(embed(b.build(), 3, 1), 0), UnsupportedError);
}

TEST(embed, moves_logical_qubits) {
    const auto p = compile_pauli_rotation(PauliString::from_str("XZ"), 0.5);
    const auto e = embed(p, 4, 1);
    EXPECT_EQ(e.n_logical, 4u);
    EXPECT_LT(oracle::max_abs(program_unitary(e), oracle::rotation("IXZI", 0.5)), 1e-10);
}

TEST(inverse_macro_program, undoes_direct_term) {
    const auto p = compile_direct_term(0b011, 0b100, 0.3, 1.1, 3);
    const auto inv = inverse_macro_program(p);
    EXPECT_LT(oracle::max_abs(program_unitary(inv) * program_unitary(p), Eigen::MatrixXcd::Identity(8, 8)), 1e-10);
}
