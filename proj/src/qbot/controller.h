// Copyright 2026 The qbot Authors
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

#ifndef QBOT_CONTROLLER_H
#define QBOT_CONTROLLER_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbot/qsim.h"

namespace qbot {

/// A total Boolean function {0,1}^inputs -> {0,1}^outputs.
///
/// rows[r] holds the outputs for input r, where input bit i is (r >> i) & 1
/// and output bit j is (rows[r] >> j) & 1.
struct TruthTable {
    size_t inputs = 0;
    size_t outputs = 0;
    std::vector<uint32_t> rows;

    /// Zero function of the given shape.
    TruthTable(size_t inputs, size_t outputs);

    uint32_t at(uint32_t input) const {
        return rows.at(input);
    }
    void set(uint32_t input, uint32_t output);

    bool operator==(const TruthTable &other) const = default;
};

/// Text format, one row per line: "<input bits> <output bits>", bit 0 first.
/// '#' starts a comment. Every input must appear exactly once.
TruthTable parse_truth_table(std::string_view text);
std::string format_truth_table(const TruthTable &table);

/// The sensor-to-actuator function of the vehicle: 4 inputs (S1..S4), outputs
/// ordered ML_A, ML_B, MR_A, MR_B, MU, ASK.
TruthTable builtin_table();

/// Two-qubit wheel motor reading, written |AB>. 11 is not a valid state.
enum class MotorState { Stop, Forward, Backward };

std::string_view motor_state_name(MotorState m);

/// Body-frame obstacle reading; true means the side is clear.
struct SensorWord {
    bool front = false;
    bool back = false;
    bool left = false;
    bool right = false;

    /// Bit i of the index is sensor S(i+1).
    static SensorWord from_index(uint32_t index);
    /// Parses "S1S2S3S4", e.g. "1000" is front clear.
    static SensorWord from_string(std::string_view text);

    uint32_t index() const;
    std::string to_string() const;
    int popcount() const;

    bool operator==(const SensorWord &other) const = default;
};

struct ControlOutcome {
    MotorState ml = MotorState::Stop;
    MotorState mr = MotorState::Stop;
    bool mu = false;
    bool ask = false;

    bool operator==(const ControlOutcome &other) const = default;
};

/// Decodes the six output bits (truth table order). Throws CorruptController
/// when a motor reads 11.
ControlOutcome decode_outputs(uint32_t outputs);

/// Bits left to right: ASK, MU, MR_B, MR_A, ML_B, ML_A.
std::string format_table_iv(const ControlOutcome &outcome);

/// Where the synthesizer places each truth table column.
struct SynthesisLayout {
    size_t num_qubits = 0;
    std::vector<QubitId> inputs;
    std::vector<QubitId> outputs;
    std::vector<QubitId> ancillas;

    static SynthesisLayout from_registers(const RegisterMap &registers, size_t num_qubits);
    /// Inputs first, then outputs, then inputs - 1 ancillas (when inputs >= 3).
    static SynthesisLayout packed(size_t inputs, size_t outputs);
};

struct SynthesisOptions {
    /// Drop one segment (by input row). Used to inject faults in tests.
    std::optional<uint32_t> omit_segment;
};

/// One segment per input row, in ascending row order. A segment X-wraps the
/// inputs that are 0 in the row and emits one fully controlled NOT per output
/// bit that is 1. Rows with an all-zero output emit nothing. The result is
/// logical; pass it through lower_circuit for native execution.
Circuit synthesize(const TruthTable &table, const SynthesisLayout &layout, const SynthesisOptions &options = {});

/// synthesize over the vehicle registers; the returned circuit carries them.
Circuit synthesize(
    const TruthTable &table, const RegisterMap &registers, size_t num_qubits, const SynthesisOptions &options = {});

/// builtin_table() synthesized over RegisterMap::vehicle(), optionally lowered.
Circuit vehicle_controller(bool lowered, const SynthesisOptions &options = {});

/// Runs the controller on sensors (all other qubits 0) via the basis fast path
/// and decodes the actuator qubits. The circuit must carry a RegisterMap.
ControlOutcome evaluate(const Circuit &controller, const SensorWord &sensors);

/// Same as evaluate, but executes on a full state vector and measures.
ControlOutcome evaluate_sampled(const Circuit &controller, const SensorWord &sensors, uint64_t seed);

/// Actuator string (format_table_iv order) of an arbitrary register readout.
std::string actuator_string(const RegisterMap &registers, const BasisState &state);

}  // namespace qbot

#endif
