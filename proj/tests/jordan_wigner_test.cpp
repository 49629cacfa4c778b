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

#include "qgate/jordan_wigner.hpp"

#include <bit>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qgate/compiler.hpp"
#include "qgate/errors.hpp"

using namespace qgate;

namespace {

Eigen::MatrixXcd dense_or_zero(const PauliTermList &terms, std::size_t n) {
    if (terms.terms.empty()) {
        const auto dim = Eigen::Index{1} << n;
        return Eigen::MatrixXcd::Zero(dim, dim);
    }
    return terms.to_dense();
}

// Occupation-basis ladder operator: a_j |n> = (-1)^{sum_{i<j} n_i} n_j |n - e_j>,
// with site j on qubit j (most significant bit first).
Eigen::MatrixXcd ladder(std::size_t n, std::size_t site, bool dagger) {
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const auto occ = static_cast<std::uint64_t>(col);
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - site);
        const bool occupied = occ & bit;
        if (occupied == dagger) {
            continue;
        }
        const std::uint64_t below = occ >> (n - site);  // sites 0..site-1
        const double sign = (std::popcount(below) % 2) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(occ ^ bit), col) = sign;
    }
    return m;
}

Eigen::MatrixXcd product(std::size_t n, const std::vector<LadderOp> &ops) {
    const auto dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto &op : ops) {
        m = m * ladder(n, op.site, op.dagger);
    }
    return m;
}

}  // namespace

TEST(jordan_wigner, oracle_anticommutes) {
    const std::size_t n = 3;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto ai = ladder(n, i, false), adj = ladder(n, j, true);
            const Eigen::MatrixXcd anti = ai * adj + adj * ai;
            const Eigen::MatrixXcd expect = (i == j ? 1.0 : 0.0) * Eigen::MatrixXcd::Identity(8, 8);
            EXPECT_LT(oracle::max_abs(anti, expect), 1e-15);
        }
    }
}

TEST(jordan_wigner, single_site_annihilator) {
    const auto terms = jordan_wigner(1, {{0, false}});
    ASSERT_EQ(terms.terms.size(), 2u);
    // sigma+ = (X + iY)/2 = |0><1|.
    EXPECT_LT(oracle::max_abs(terms.to_dense(), oracle::ketbra(0, 1, 1)), 1e-15);
    for (const auto &t : terms.terms) {
        EXPECT_EQ(t.string.weight(), 1u);
    }
}

TEST(jordan_wigner, ladder_operators_match_oracle) {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t j = 0; j < n; ++j) {
            for (bool dagger : {false, true}) {
                EXPECT_LT(oracle::max_abs(jordan_wigner(n, {{j, dagger}}).to_dense(), ladder(n, j, dagger)), 1e-14);
            }
        }
    }
}

TEST(jordan_wigner, hopping_term) {
    const double h = 0.37;
    const auto terms = jordan_wigner_one_body(3, 2, 0, h);
    ASSERT_EQ(terms.terms.size(), 2u);
    EXPECT_EQ(terms.terms[0].string.letters(), "XZX");
    EXPECT_EQ(terms.terms[1].string.letters(), "YZY");
    EXPECT_NEAR(terms.terms[0].coefficient.real(), h / 2, 1e-15);
    EXPECT_NEAR(terms.terms[1].coefficient.real(), h / 2, 1e-15);
    const Eigen::MatrixXcd hop = product(3, {{2, true}, {0, false}});
    EXPECT_LT(oracle::max_abs(terms.to_dense(), h * (hop + hop.adjoint())), 1e-14);
}

TEST(jordan_wigner, number_operator) {
    const auto terms = jordan_wigner_one_body(2, 1, 1, 0.5);
    EXPECT_LT(oracle::max_abs(terms.to_dense(), 0.5 * product(2, {{1, true}, {1, false}})), 1e-15);
}

TEST(jordan_wigner, random_two_body_terms_match_oracle) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> site(0, 4);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 30; ++trial) {
        std::array<std::size_t, 4> idx{site(rng), site(rng), site(rng), site(rng)};
        std::sort(idx.rbegin(), idx.rend());
        const std::complex<double> h(u(rng), u(rng));
        const std::vector<LadderOp> ops{{idx[0], true}, {idx[1], true}, {idx[2], false}, {idx[3], false}};
        const Eigen::MatrixXcd o = product(5, ops);
        Eigen::MatrixXcd expect = h * o + std::conj(h) * o.adjoint();
        if (oracle::max_abs(o, o.adjoint()) < 1e-15) {
            expect = h.real() * o;
            const auto terms = jordan_wigner_two_body(5, idx[0], idx[1], idx[2], idx[3], h.real());
            EXPECT_LT(oracle::max_abs(dense_or_zero(terms, 5), expect), 1e-12);
            continue;
        }
        const auto terms = jordan_wigner_two_body(5, idx[0], idx[1], idx[2], idx[3], h);
        EXPECT_LT(oracle::max_abs(dense_or_zero(terms, 5), expect), 1e-12);
    }
    EXPECT_THROW(jordan_wigner_two_body(4, 0, 1, 2, 3, 1.0), DomainError);
}

TEST(jordan_wigner, two_body_cost) {
    for (auto [p, q, r, s] : {std::array<std::size_t, 4>{3, 2, 1, 0}, {5, 3, 2, 0}, {6, 2, 1, 0}}) {
        const std::size_t n = p + 1;
        const auto terms = jordan_wigner_two_body(n, p, q, r, s, 0.3);
        ASSERT_EQ(terms.terms.size(), 8u);
        const std::size_t nz = jordan_wigner_z_count(p, q, r, s);
        ProgramBuilder b(n);
        for (const auto &t : terms.terms) {
            EXPECT_EQ(t.string.weight(), 4 + nz);
            b.pauli_rotation(t.string, 0.1);
        }
        const auto c = cost(b.build());
        EXPECT_EQ(c.gate_ancillas, 8u);
        EXPECT_EQ(c.entangling_gates, 32 + 8 * nz);
    }
}
