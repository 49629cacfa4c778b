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

#include "qgate/stabilizer.hpp"

#include <algorithm>
#include <sstream>

#include "qgate/errors.hpp"

namespace qgate {

namespace {

using L = PauliLetter;

PauliString two_site(std::size_t n, std::size_t a, L la, std::size_t b, L lb) {
    PauliString p(n);
    p.set_letter(a, la);
    p.set_letter(b, lb);
    return p;
}

PauliString one_site(std::size_t n, std::size_t q, L letter, bool negate) {
    PauliString p = PauliString::single(n, q, letter);
    p.set_phase_exponent(negate ? 2 : 0);
    return p;
}

// Image of a single letter on one site of the gate.
PauliString image(const CliffordGate &g, std::size_t n, std::size_t site, L letter) {
    const std::size_t a = g.a, b = g.b;
    switch (g.kind) {
        case CliffordKind::H:
            if (letter == L::X) {
                return PauliString::single(n, a, L::Z);
            }
            if (letter == L::Z) {
                return PauliString::single(n, a, L::X);
            }
            return one_site(n, a, L::Y, true);
        case CliffordKind::S:
            if (letter == L::X) {
                return PauliString::single(n, a, L::Y);
            }
            if (letter == L::Y) {
                return one_site(n, a, L::X, true);
            }
            return PauliString::single(n, a, L::Z);
        case CliffordKind::Sdg:
            if (letter == L::X) {
                return one_site(n, a, L::Y, true);
            }
            if (letter == L::Y) {
                return PauliString::single(n, a, L::X);
            }
            return PauliString::single(n, a, L::Z);
        case CliffordKind::X:
        case CliffordKind::Y:
        case CliffordKind::Z: {
            const L own = g.kind == CliffordKind::X ? L::X : g.kind == CliffordKind::Y ? L::Y : L::Z;
            return one_site(n, a, letter, letter != own);
        }
        case CliffordKind::CX:
            if (site == a) {
                return letter == L::Z ? PauliString::single(n, a, L::Z) : two_site(n, a, letter, b, L::X);
            }
            return letter == L::X ? PauliString::single(n, b, L::X) : two_site(n, a, L::Z, b, letter);
        case CliffordKind::CY:
            if (site == a) {
                return letter == L::Z ? PauliString::single(n, a, L::Z) : two_site(n, a, letter, b, L::Y);
            }
            return letter == L::Y ? PauliString::single(n, b, L::Y) : two_site(n, a, L::Z, b, letter);
        case CliffordKind::CZ: {
            const std::size_t other = site == a ? b : a;
            return letter == L::Z ? PauliString::single(n, site, L::Z) : two_site(n, site, letter, other, L::Z);
        }
    }
    throw ConsistencyError("unknown Clifford kind");
}

}  // namespace

bool is_two_qubit(CliffordKind kind) {
    return kind == CliffordKind::CX || kind == CliffordKind::CY || kind == CliffordKind::CZ;
}

const char *clifford_name(CliffordKind kind) {
    switch (kind) {
        case CliffordKind::H:
            return "H";
        case CliffordKind::S:
            return "S";
        case CliffordKind::Sdg:
            return "S_DAG";
        case CliffordKind::X:
            return "X";
        case CliffordKind::Y:
            return "Y";
        case CliffordKind::Z:
            return "Z";
        case CliffordKind::CX:
            return "CX";
        case CliffordKind::CY:
            return "CY";
        case CliffordKind::CZ:
            return "CZ";
    }
    return "?";
}

CliffordKind clifford_from_name(const std::string &name) {
    for (auto k : {CliffordKind::H, CliffordKind::S, CliffordKind::Sdg, CliffordKind::X, CliffordKind::Y,
                   CliffordKind::Z, CliffordKind::CX, CliffordKind::CY, CliffordKind::CZ}) {
        if (name == clifford_name(k)) {
            return k;
        }
    }
    throw ParseError("unknown Clifford gate '" + name + "'");
}

PauliString conjugate(const PauliString &p, const CliffordGate &gate) {
    const std::size_t n = p.num_qubits();
    if (gate.a >= n || (is_two_qubit(gate.kind) && (gate.b >= n || gate.b == gate.a))) {
        throw DomainError(std::string("invalid qubit indices for ") + clifford_name(gate.kind));
    }
    std::vector<std::size_t> sites{gate.a};
    if (is_two_qubit(gate.kind)) {
        sites.push_back(gate.b);
    }
    PauliString out = p;
    std::vector<L> letters;
    for (std::size_t s : sites) {
        letters.push_back(p.letter(s));
        out.set_letter(s, L::I);
    }
    for (std::size_t k = 0; k < sites.size(); ++k) {
        if (letters[k] != L::I) {
            out *= image(gate, n, sites[k], letters[k]);
        }
    }
    if (out.phase_exponent() != p.phase_exponent()) {
        const unsigned diff = (out.phase_exponent() + 4 - p.phase_exponent()) & 3u;
        if (diff & 1u) {
            throw ConsistencyError("conjugation produced an odd power of i");
        }
    }
    return out;
}

const PauliString &StabilizerTableau::generator(std::size_t index) const {
    if (index >= generators_.size()) {
        throw DomainError("generator index " + std::to_string(index) + " out of range");
    }
    return generators_[index];
}

void StabilizerTableau::check_generator(const PauliString &g, std::size_t skip) const {
    if (g.num_qubits() != num_qubits_) {
        throw DimensionError("generator has " + std::to_string(g.num_qubits()) + " qubits, tableau has " +
                             std::to_string(num_qubits_));
    }
    if (g.phase_exponent() & 1u) {
        throw DomainError("stabilizer generator sign must be +1 or -1");
    }
    for (std::size_t k = 0; k < generators_.size(); ++k) {
        if (k != skip && !commutes(generators_[k], g)) {
            throw DomainError("generator " + g.str() + " anticommutes with " + generators_[k].str());
        }
    }
}

std::size_t StabilizerTableau::add_generator(PauliString g) {
    check_generator(g, generators_.size());
    generators_.push_back(std::move(g));
    if (rank() != generators_.size()) {
        generators_.pop_back();
        throw DomainError("generator is not independent of the tableau");
    }
    return generators_.size() - 1;
}

void StabilizerTableau::remove_generator(std::size_t index) {
    generator(index);
    generators_.erase(generators_.begin() + static_cast<std::ptrdiff_t>(index));
}

void StabilizerTableau::set_generator(std::size_t index, PauliString g) {
    generator(index);
    check_generator(g, index);
    std::swap(generators_[index], g);
    if (rank() != generators_.size()) {
        std::swap(generators_[index], g);
        throw DomainError("generator is not independent of the tableau");
    }
}

void StabilizerTableau::conjugate(const CliffordGate &gate) {
    for (auto &g : generators_) {
        g = qgate::conjugate(g, gate);
    }
}

void StabilizerTableau::recombine(std::size_t target, std::size_t factor) {
    generator(target);
    generator(factor);
    if (target == factor) {
        throw DomainError("recombine needs two distinct generators");
    }
    generators_[target] *= generators_[factor];
    if (generators_[target].phase_exponent() & 1u) {
        throw ConsistencyError("recombination produced an odd power of i");
    }
}

void StabilizerTableau::append_qubit() {
    ++num_qubits_;
    for (auto &g : generators_) {
        g = g.extended(1);
    }
}

void StabilizerTableau::remove_qubit(std::size_t qubit) {
    if (qubit >= num_qubits_) {
        throw DomainError("qubit " + std::to_string(qubit) + " out of range");
    }
    for (auto &g : generators_) {
        if (g.letter(qubit) != L::I) {
            throw ConsistencyError("removing qubit " + std::to_string(qubit) + " still used by " + g.str());
        }
        g = g.without_qubit(qubit);
    }
    --num_qubits_;
}

std::size_t StabilizerTableau::rank() const {
    const std::size_t words = (num_qubits_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (const auto &g : generators_) {
        std::vector<std::uint64_t> r(g.x_words().begin(), g.x_words().end());
        r.insert(r.end(), g.z_words().begin(), g.z_words().end());
        rows.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < 2 * words * 64 && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][w] & bit)) {
                for (std::size_t k = 0; k < rows[r].size(); ++k) {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

bool StabilizerTableau::all_commute() const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        for (std::size_t j = i + 1; j < generators_.size(); ++j) {
            if (!commutes(generators_[i], generators_[j])) {
                return false;
            }
        }
    }
    return true;
}

bool StabilizerTableau::stabilizes(const StateVector &sv, double tolerance) const {
    if (sv.num_qubits() != num_qubits_) {
        throw DimensionError("tableau has " + std::to_string(num_qubits_) + " qubits, state has " +
                             std::to_string(sv.num_qubits()));
    }
    for (const auto &g : generators_) {
        StateVector image = sv;
        image.apply_pauli(g);
        if ((image.amplitudes() - sv.amplitudes()).cwiseAbs().maxCoeff() > tolerance) {
            return false;
        }
    }
    return true;
}

std::string format_generator(const PauliString &g, const std::vector<std::string> &labels) {
    std::ostringstream out;
    if (g.phase_exponent() == 2) {
        out << '-';
    } else if (g.phase_exponent() == 1) {
        out << "i";
    } else if (g.phase_exponent() == 3) {
        out << "-i";
    }
    bool first = true;
    for (std::size_t q = 0; q < g.num_qubits(); ++q) {
        if (g.letter(q) == L::I) {
            continue;
        }
        if (!first) {
            out << ' ';
        }
        first = false;
        out << to_char(g.letter(q)) << (q < labels.size() ? labels[q] : std::to_string(q));
    }
    if (first) {
        out << 'I';
    }
    return out.str();
}

std::string StabilizerTableau::str(const std::vector<std::string> &labels) const {
    std::string out;
    for (const auto &g : generators_) {
        out += format_generator(g, labels);
        out += '\n';
    }
    return out;
}

StabilizerTableau conjugate(StabilizerTableau tableau, const CliffordGate &gate) {
    tableau.conjugate(gate);
    return tableau;
}

StabilizerTableau recombine(StabilizerTableau tableau, std::size_t target, std::size_t factor) {
    tableau.recombine(target, factor);
    return tableau;
}

bool stabilizes(const StabilizerTableau &tableau, const StateVector &sv, double tolerance) {
    return tableau.stabilizes(sv, tolerance);
}

}  // namespace qgate
