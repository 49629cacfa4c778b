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
#include "qgate/executor.hpp"

namespace qgate {

CostReport cost(const QGateProgram &program) {
    require_valid(program);
    CostReport report;
    report.work_qubits = program.n_work;
    for (const auto &inst : program.instructions) {
        if (std::holds_alternative<AllocAncilla>(inst)) {
            ++report.gate_ancillas;
        } else if (std::holds_alternative<AllocMagic>(inst)) {
            ++report.magic_states;
        } else if (std::holds_alternative<CPauli>(inst)) {
            ++report.entangling_gates;
        } else if (std::holds_alternative<AncillaCX>(inst)) {
            ++report.ancilla_ancilla_gates;
        } else if (std::holds_alternative<MeasureRotated>(inst) || std::holds_alternative<Rotation>(inst)) {
            ++report.rotations;
        } else if (const auto *b = std::get_if<ControlledBlock>(&inst)) {
            ++report.controlled_blocks;
            for (const auto &op : b->body) {
                if (std::holds_alternative<Rotation>(op)) {
                    ++report.rotations;
                }
            }
            if (b->controls.size() == 2 && b->body.size() == 1) {
                const auto *sc = std::get_if<SingleClifford>(&b->body.front());
                if (sc && sc->gate == CliffordKind::X) {
                    ++report.toffoli_count;
                }
            }
        }
    }
    return report;
}

}  // namespace qgate
