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

#include <cmath>
#include <map>
#include <string>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

using Expansion = std::map<std::string, std::pair<PauliString, std::complex<double>>>;

constexpr double kPrune = 1e-14;

std::complex<double> phase_of(const PauliString &p) {
    static const std::complex<double> kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPow[p.phase_exponent() & 3u];
}

Expansion expand(std::size_t n, const std::vector<LadderOp> &ops, std::complex<double> coefficient) {
    Expansion acc;
    acc.emplace(std::string(n, 'I'), std::pair{PauliString(n), coefficient});
    for (const auto &op : ops) {
        if (op.site >= n) {
            throw DomainError("site " + std::to_string(op.site) + " outside " + std::to_string(n) + " sites");
        }
        PauliString x(n), y(n);
        for (std::size_t k = 0; k < op.site; ++k) {
            x.set_letter(k, PauliLetter::Z);
            y.set_letter(k, PauliLetter::Z);
        }
        x.set_letter(op.site, PauliLetter::X);
        y.set_letter(op.site, PauliLetter::Y);
        const std::complex<double> wy(0.0, op.dagger ? -0.5 : 0.5);
        Expansion next;
        for (const auto &[key, entry] : acc) {
            for (const auto &[factor, w] : {std::pair{x, std::complex<double>(0.5, 0.0)}, std::pair{y, wy}}) {
                PauliString prod = entry.first * factor;
                const std::complex<double> c = entry.second * w * phase_of(prod);
                prod.set_phase_exponent(0);
                auto [it, inserted] = next.try_emplace(prod.letters(), prod, 0.0);
                it->second.second += c;
            }
        }
        acc = std::move(next);
    }
    return acc;
}

PauliTermList to_list(const Expansion &e, bool real) {
    PauliTermList out;
    for (const auto &[key, entry] : e) {
        std::complex<double> c = entry.second;
        if (real) {
            c = {c.real(), 0.0};
        }
        if (std::abs(c) > kPrune) {
            out.terms.push_back({c, entry.first});
        }
    }
    return out;
}

}  // namespace

PauliTermList jordan_wigner(std::size_t n_sites, const std::vector<LadderOp> &ops, std::complex<double> coefficient) {
    return to_list(expand(n_sites, ops, coefficient), false);
}

PauliTermList jordan_wigner_hermitian(std::size_t n_sites, const std::vector<LadderOp> &ops, std::complex<double> h) {
    std::vector<LadderOp> adj(ops.rbegin(), ops.rend());
    for (auto &op : adj) {
        op.dagger = !op.dagger;
    }
    Expansion o = expand(n_sites, ops, 1.0);
    const Expansion od = expand(n_sites, adj, 1.0);
    bool self_adjoint = true;
    for (const auto &[key, entry] : o) {
        const auto it = od.find(key);
        const std::complex<double> other = it == od.end() ? 0.0 : it->second.second;
        self_adjoint = self_adjoint && std::abs(entry.second - other) <= kPrune;
    }
    if (self_adjoint) {
        if (std::abs(h.imag()) > 1e-12) {
            throw DomainError("self-adjoint operator needs a real coefficient");
        }
        for (auto &[key, entry] : o) {
            entry.second *= h;
        }
        return to_list(o, true);
    }
    // O^dagger has conjugated coefficients on the same Hermitian strings.
    for (auto &[key, entry] : o) {
        entry.second = 2.0 * (h * entry.second).real();
    }
    return to_list(o, true);
}

PauliTermList jordan_wigner_one_body(std::size_t n_sites, std::size_t p, std::size_t q, std::complex<double> h) {
    return jordan_wigner_hermitian(n_sites, {{p, true}, {q, false}}, h);
}

PauliTermList jordan_wigner_two_body(std::size_t n_sites, std::size_t p, std::size_t q, std::size_t r,
                                     std::size_t s, std::complex<double> h) {
    if (!(p >= q && q >= r && r >= s)) {
        throw DomainError("two-body indices must satisfy p >= q >= r >= s");
    }
    return jordan_wigner_hermitian(n_sites, {{p, true}, {q, true}, {r, false}, {s, false}}, h);
}

}  // namespace qgate
