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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qgate/pauli.hpp"
#include "qgate/statevector.hpp"

namespace qgate {

enum class CliffordKind : std::uint8_t { H, S, Sdg, X, Y, Z, CX, CY, CZ };

bool is_two_qubit(CliffordKind kind);
const char *clifford_name(CliffordKind kind);
CliffordKind clifford_from_name(const std::string &name);

/// A Clifford gate on qubit `a` (control for two-qubit kinds) and `b` (target).
struct CliffordGate {
    CliffordKind kind = CliffordKind::H;
    std::size_t a = 0;
    std::size_t b = 0;

    bool operator==(const CliffordGate &) const = default;
};

/// C p C^dagger.
PauliString conjugate(const PauliString &p, const CliffordGate &gate);

/// Generators of a stabilizer group tracked during a compilation. Only the
/// rows a compilation cares about are kept, so the list may be shorter than
/// num_qubits. Generators have sign +1 or -1, commute pairwise and are independent.
class StabilizerTableau {
   public:
    StabilizerTableau() = default;
    explicit StabilizerTableau(std::size_t num_qubits) : num_qubits_(num_qubits) {
    }

    std::size_t num_qubits() const {
        return num_qubits_;
    }
    std::size_t size() const {
        return generators_.size();
    }
    const std::vector<PauliString> &generators() const {
        return generators_;
    }
    const PauliString &generator(std::size_t index) const;

    /// Appends a generator; throws DomainError if it breaks commutation,
    /// independence or has an imaginary sign.
    std::size_t add_generator(PauliString g);
    void remove_generator(std::size_t index);
    /// Replaces the generator at `index` (same commutation/independence checks).
    void set_generator(std::size_t index, PauliString g);

    void conjugate(const CliffordGate &gate);
    /// generator[target] <- generator[target] * generator[factor].
    void recombine(std::size_t target, std::size_t factor);

    /// Adds an identity column at the end of every generator.
    void append_qubit();
    /// Deletes a qubit column; the caller must have removed every generator
    /// acting on it.
    void remove_qubit(std::size_t qubit);

    /// Symplectic rank of the generator list over GF(2).
    std::size_t rank() const;
    bool all_commute() const;
    /// True iff g|psi> = |psi> within `tolerance` per amplitude for every generator.
    bool stabilizes(const StateVector &sv, double tolerance = 1e-9) const;

    /// One generator per line, e.g. "X_A0 Z1 X3"; labels[q] is appended to the
    /// letter of qubit q (defaults to the qubit index).
    std::string str(const std::vector<std::string> &labels = {}) const;

   private:
    void check_generator(const PauliString &g, std::size_t skip) const;

    std::size_t num_qubits_ = 0;
    std::vector<PauliString> generators_;
};

StabilizerTableau conjugate(StabilizerTableau tableau, const CliffordGate &gate);
StabilizerTableau recombine(StabilizerTableau tableau, std::size_t target, std::size_t factor);
bool stabilizes(const StabilizerTableau &tableau, const StateVector &sv, double tolerance = 1e-9);

/// Renders one Pauli string with per-qubit labels, identity letters omitted.
std::string format_generator(const PauliString &g, const std::vector<std::string> &labels = {});

}  // namespace qgate
