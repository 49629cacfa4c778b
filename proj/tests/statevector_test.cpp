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

#include "qgate/statevector.hpp"

#include <numbers>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qgate/errors.hpp"

using namespace qgate;
using std::numbers::pi;

namespace {

Eigen::VectorXcd random_vector(std::size_t n, std::mt19937_64 &rng) {
    return StateVector::random(n, rng).amplitudes();
}

}  // namespace

TEST(state_vector, construction) {
    const StateVector zero(3);
    EXPECT_EQ(zero.dimension(), 8u);
    EXPECT_EQ(zero[0], std::complex<double>(1.0));
    const auto b = StateVector::basis(2, 2);  // |10>
    EXPECT_EQ(b[2], std::complex<double>(1.0));
    EXPECT_THROW(StateVector::basis(2, 4), DomainError);
    Eigen::VectorXcd v(3);
    v << 1, 0, 0;
    EXPECT_THROW(StateVector::from_amplitudes(v), DimensionError);
    EXPECT_THROW(StateVector::from_amplitudes(Eigen::VectorXcd::Ones(2)), DomainError);
    std::mt19937_64 rng(1);
    EXPECT_NEAR(StateVector::random(4, rng).norm(), 1.0, 1e-12);
}

TEST(state_vector, single_qubit_gates_match_dense) {
    std::mt19937_64 rng(2);
    const std::complex<double> i(0, 1);
    for (std::size_t q = 0; q < 3; ++q) {
        for (const Gate1 &g : {Gate1::h(), Gate1::rx(0.3), Gate1::rz(-1.1), Gate1::phase(0.7), Gate1{GateKind::S, 0},
                               Gate1{GateKind::Sdg, 0}, Gate1{GateKind::Y, 0}}) {
            const Eigen::VectorXcd v = random_vector(3, rng);
            auto sv = StateVector::from_amplitudes(v);
            sv.apply(g, q);
            EXPECT_LT((sv.amplitudes() - oracle::on_qubit(3, q, g.matrix()) * v).norm(), 1e-13);
        }
    }
    Eigen::Matrix2cd rz;
    rz << std::exp(-i * 0.5), 0, 0, std::exp(i * 0.5);
    EXPECT_LT((Gate1::rz(1.0).matrix() - rz).norm(), 1e-15);
    EXPECT_LT((Gate1::rx(0.4).matrix() - oracle::rotation("X", -0.4)).norm(), 1e-15);
}

TEST(state_vector, controlled_gates_match_dense) {
    std::mt19937_64 rng(3);
    const Eigen::VectorXcd v = random_vector(4, rng);
    auto sv = StateVector::from_amplitudes(v);
    const Eigen::Matrix2cd u = Gate1::rx(0.9).matrix();
    sv.apply_controlled({{0, true}, {3, false}}, 2, u);
    const Eigen::MatrixXcd expect = oracle::controlled(4, {{0, true}, {3, false}}, oracle::on_qubit(4, 2, u));
    EXPECT_LT((sv.amplitudes() - expect * v).norm(), 1e-13);

    auto cp = StateVector::from_amplitudes(v);
    cp.apply_controlled_pauli(1, 3, PauliLetter::Y);
    EXPECT_LT((cp.amplitudes() - oracle::controlled(4, {{1, true}}, oracle::on_qubit(4, 3, oracle::letter('Y'))) * v)
                  .norm(),
              1e-13);
    EXPECT_THROW(cp.apply_controlled({{2, true}}, 2, u), DomainError);
}

TEST(state_vector, pauli_rotation_matches_dense) {
    std::mt19937_64 rng(4);
    for (const char *s : {"ZIXZ", "YYXI", "IIII", "XZYX"}) {
        const Eigen::VectorXcd v = random_vector(4, rng);
        auto sv = StateVector::from_amplitudes(v);
        sv.apply_pauli_rotation(PauliString::from_str(s), 0.83);
        EXPECT_LT((sv.amplitudes() - oracle::rotation(s, 0.83) * v).norm(), 1e-13) << s;

        auto cr = StateVector::from_amplitudes(v);
        cr.apply_controlled_pauli_rotation({{0, false}}, PauliString::from_str(std::string("I") + (s + 1)), -0.4);
        const Eigen::MatrixXcd body = oracle::rotation(std::string("I") + (s + 1), -0.4);
        EXPECT_LT((cr.amplitudes() - oracle::controlled(4, {{0, false}}, body) * v).norm(), 1e-13);
    }
    auto p = StateVector::from_amplitudes(random_vector(2, rng));
    const Eigen::VectorXcd before = p.amplitudes();
    p.apply_pauli(PauliString::from_str("-iXY"));
    EXPECT_LT((p.amplitudes() - std::complex<double>(0, -1) * oracle::pauli("XY") * before).norm(), 1e-14);
}

TEST(state_vector, apply_dense_respects_target_order) {
    std::mt19937_64 rng(5);
    const Eigen::VectorXcd v = random_vector(3, rng);
    const Eigen::MatrixXcd xz = oracle::pauli("XZ");
    auto sv = StateVector::from_amplitudes(v);
    sv.apply_dense({2, 0}, xz);  // X on qubit 2, Z on qubit 0
    EXPECT_LT((sv.amplitudes() - oracle::pauli("ZIX") * v).norm(), 1e-14);
    auto cv = StateVector::from_amplitudes(v);
    cv.apply_dense({2}, oracle::letter('X'), {{1, true}});
    EXPECT_LT((cv.amplitudes() - oracle::controlled(3, {{1, true}}, oracle::pauli("IIX")) * v).norm(), 1e-14);
}

TEST(state_vector, measurement_and_qubit_management) {
    StateVector sv(1);
    sv.apply(Gate1::h(), 0);
    sv.append_qubit(0.6, 0.8);
    EXPECT_NEAR(sv.probability(1, 1), 0.64, 1e-14);
    const auto r = sv.measure_forced(1, 1);
    EXPECT_NEAR(r.probability, 0.64, 1e-14);
    EXPECT_EQ(sv.num_qubits(), 1u);
    EXPECT_NEAR(std::abs(sv[0]), std::sqrt(0.5), 1e-14);

    StateVector zero(2);
    EXPECT_THROW(zero.measure_forced(0, 1), PostselectionError);

    std::mt19937_64 a(11), b(11);
    StateVector s1(2), s2(2);
    s1.apply(Gate1::h(), 0);
    s2.apply(Gate1::h(), 0);
    EXPECT_EQ(s1.measure_sampled(0, a).outcome, s2.measure_sampled(0, b).outcome);
}

TEST(state_vector, csv_dump) {
    std::ostringstream ss;
    StateVector::basis(1, 1).write_csv(ss);
    EXPECT_EQ(ss.str(), "index,re,im\n0,0,0\n1,1,0\n");
}

TEST(dense_unitary, oracle_helpers) {
    EXPECT_THROW(DenseUnitary(Eigen::MatrixXcd::Ones(2, 2)), DomainError);
    const Eigen::MatrixXcd h = oracle::pauli("XZ") * 0.4 + oracle::pauli("ZI") * 1.3;
    const auto u = hermitian_exponential_oracle(h, 0.7);
    EXPECT_LT(oracle::max_abs(u.matrix(), oracle::evolve(h, 0.7)), 1e-12);
    EXPECT_THROW(hermitian_exponential_oracle(oracle::pauli("XZ") * std::complex<double>(0, 1), 1.0), DomainError);
    EXPECT_NEAR(frobenius_distance(Eigen::MatrixXcd::Identity(2, 2), -Eigen::MatrixXcd::Identity(2, 2)), 2 * std::sqrt(2.0),
                1e-14);
    const auto a = StateVector::basis(1, 0);
    auto b = a;
    b.multiply_scalar(std::polar(1.0, 0.3));
    EXPECT_NEAR(fidelity(a, b), 1.0, 1e-15);
    EXPECT_LT(distance_up_to_phase(a.amplitudes(), b.amplitudes()), 1e-15);
}
