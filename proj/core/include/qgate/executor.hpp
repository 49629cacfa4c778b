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

#include "qgate/program.hpp"
#include "qgate/statevector.hpp"

namespace qgate {

enum class ExecMode : std::uint8_t {
    /// Every measurement forced to outcome 0; deterministic unitary action.
    PostselectZero,
    /// Outcomes drawn from a generator seeded with ExecOptions::seed.
    Sampled,
    /// Outcomes taken from ExecOptions::forced, in program order.
    Forced,
};

enum class FramePolicy : std::uint8_t { ApplyImmediately, TrackToEnd };

/// What happens when a teleported rotation comes out with the reversed angle.
enum class TeleportPolicy : std::uint8_t {
    /// Apply Z and exp(i theta X) to the magic qubit so the +theta rotation is realised.
    Rerotate,
    /// Leave it; the record carries the effective angle (-1)^nu theta.
    Record,
};

struct ExecOptions {
    FramePolicy frame = FramePolicy::ApplyImmediately;
    TeleportPolicy teleport = TeleportPolicy::Rerotate;
    std::uint64_t seed = 0;
    /// Frame-corrected outcomes for ExecMode::Forced, one per MeasureRotated/MeasureX.
    std::vector<int> forced;
    double postselection_floor = kPostselectionFloor;
    /// Check after every instruction that the tracked stabilizer rows hold on
    /// the simulated state.
    bool debug_tableau = false;
    double tableau_tolerance = 1e-9;
};

struct ProgramMeasurement {
    QubitRef ref;
    /// Frame-corrected outcome (the mu / nu of the derivations).
    int outcome = 0;
    /// Bit read off the simulated register.
    int raw_outcome = 0;
    double probability = 1.0;
    MeasureMode mode = MeasureMode::Forced;
    /// Angle actually used for the rotated measurement, or the teleported angle
    /// realised for MeasureX.
    double effective_angle = 0.0;
    /// Parity by which a tracked frame flipped the angle.
    int sign_flip = 0;
};

struct ExecutionResult {
    StateVector final_state;
    std::vector<ProgramMeasurement> records;
    bool frame_applied = false;
    /// Product of the recorded Born probabilities.
    double branch_weight = 1.0;
    std::size_t tableau_checks = 0;
    std::vector<std::string> tableau_failures;
};

struct Diagnostic {
    std::size_t instruction = 0;
    std::string code;
    std::string message;
};

/// Checks ref discipline, single measurement, tableau/byproduct consistency and
/// macro placement. Never throws for malformed programs.
std::vector<Diagnostic> validate(const QGateProgram &program);
/// Throws ProgramError carrying the first diagnostic, if any.
void require_valid(const QGateProgram &program);

ExecutionResult execute(const QGateProgram &program, const StateVector &initial, ExecMode mode,
                        const ExecOptions &options = {});

/// Every outcome combination with non-negligible probability, each run in
/// Forced mode; branches below the postselection floor are skipped.
std::vector<ExecutionResult> execute_all_branches(const QGateProgram &program, const StateVector &initial,
                                                  const ExecOptions &options = {});

/// Largest phase-free amplitude distance between the first branch and any other.
double max_branch_deviation(const std::vector<ExecutionResult> &branches);

/// Columns are the postselect-zero images of the logical basis states,
/// including the program's global phase.
Eigen::MatrixXcd program_unitary(const QGateProgram &program, const ExecOptions &options = {});

}  // namespace qgate
