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
#include <optional>
#include <set>
#include <vector>

#include "qgate/executor.hpp"
#include "qgate/program.hpp"
#include "qgate/stabilizer.hpp"

namespace qgate::detail {

/// Walks a program keeping the live qubit layout (the order a simulated
/// register would have) and one stabilizer row per entangled ancilla.
class TableauTracker {
   public:
    explicit TableauTracker(const QGateProgram &program);

    /// Applies one instruction. Problems are appended to `out`; the tracker
    /// then continues on a best-effort basis. `x_outcome` is the frame-corrected
    /// MeasureX outcome (only the row sign depends on it).
    void step(const Instruction &inst, std::size_t index, std::vector<Diagnostic> &out, int x_outcome = 0);
    void finish(std::size_t index, std::vector<Diagnostic> &out) const;

    const std::vector<QubitRef> &layout() const {
        return layout_;
    }
    std::optional<std::size_t> position(const QubitRef &ref) const;
    std::size_t require_position(const QubitRef &ref) const;
    const StabilizerTableau &tableau() const {
        return tableau_;
    }
    std::optional<std::size_t> row_of(const QubitRef &owner) const;
    /// Data-register string re-expressed on the live layout.
    PauliString to_layout(const PauliString &data) const;
    /// Conjugates every row (used for out-of-program compensation gates).
    void conjugate(const CliffordGate &gate) {
        tableau_.conjugate(gate);
    }

   private:
    void append(const QubitRef &ref);
    void remove(std::size_t pos);
    bool pure_row(std::size_t row, const QubitRef &owner) const;
    bool live_ancilla(const QubitRef &ref, std::size_t index, std::vector<Diagnostic> &out) const;
    bool live_data(const QubitRef &ref, std::size_t index, std::vector<Diagnostic> &out) const;
    void drop_rows_touching(std::size_t pos, std::size_t index, std::vector<Diagnostic> &out, const char *code);

    const QGateProgram &program_;
    std::vector<QubitRef> layout_;
    StabilizerTableau tableau_;
    std::vector<QubitRef> owners_;
    std::set<QubitRef> allocated_;
    std::set<QubitRef> finished_;
};

}  // namespace qgate::detail
