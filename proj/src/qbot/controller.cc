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

#include "qbot/controller.h"

#include <algorithm>
#include <bit>
#include <cctype>

#include "qbot/decompose.h"
#include "qbot/error.h"

namespace qbot {

namespace {

constexpr size_t MAX_TABLE_INPUTS = 16;
constexpr size_t MAX_TABLE_OUTPUTS = 32;

// Output column positions in truth table order.
constexpr uint32_t OUT_ML_A = 1u << 0;
constexpr uint32_t OUT_ML_B = 1u << 1;
constexpr uint32_t OUT_MR_A = 1u << 2;
constexpr uint32_t OUT_MR_B = 1u << 3;
constexpr uint32_t OUT_MU = 1u << 4;
constexpr uint32_t OUT_ASK = 1u << 5;

std::string bits_to_string(uint32_t value, size_t width) {
    std::string s;
    for (size_t i = 0; i < width; i++) {
        s.push_back((value >> i) & 1 ? '1' : '0');
    }
    return s;
}

MotorState decode_motor(bool a, bool b, const char *which) {
    if (a && b) {
        throw Error(ErrorCode::CorruptController, std::string(which) + " motor reads |11>, which is not a motor state");
    }
    if (a) {
        return MotorState::Forward;
    }
    if (b) {
        return MotorState::Backward;
    }
    return MotorState::Stop;
}

BasisState sensor_input(const Circuit &controller, const SensorWord &sensors) {
    if (!controller.registers()) {
        throw Error(ErrorCode::Structural, "controller circuit has no register map");
    }
    const auto &regs = *controller.registers();
    BasisState input(controller.num_qubits());
    input.bits[regs.sensors[0].index] = sensors.front;
    input.bits[regs.sensors[1].index] = sensors.back;
    input.bits[regs.sensors[2].index] = sensors.left;
    input.bits[regs.sensors[3].index] = sensors.right;
    return input;
}

ControlOutcome decode_register(const RegisterMap &regs, const BasisState &state) {
    uint32_t outputs = 0;
    auto outs = regs.outputs();
    for (size_t j = 0; j < outs.size(); j++) {
        outputs |= uint32_t{state.bits[outs[j].index]} << j;
    }
    return decode_outputs(outputs);
}

}  // namespace

TruthTable::TruthTable(size_t inputs, size_t outputs) : inputs(inputs), outputs(outputs) {
    if (inputs > MAX_TABLE_INPUTS || outputs == 0 || outputs > MAX_TABLE_OUTPUTS) {
        throw Error(
            ErrorCode::Capacity,
            "truth table shape " + std::to_string(inputs) + "x" + std::to_string(outputs) + " is not supported");
    }
    rows.assign(size_t{1} << inputs, 0);
}

void TruthTable::set(uint32_t input, uint32_t output) {
    if (input >= rows.size()) {
        throw Error(ErrorCode::InvalidArgument, "truth table row " + std::to_string(input) + " out of range");
    }
    if (outputs < 32 && (output >> outputs) != 0) {
        throw Error(ErrorCode::InvalidArgument, "output value wider than the table");
    }
    rows[input] = output;
}

TruthTable parse_truth_table(std::string_view text) {
    std::optional<TruthTable> table;
    std::vector<bool> seen;
    size_t line_no = 0;
    auto fail = [&](const std::string &message) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + message);
    };
    auto parse_bits = [&](std::string_view bits) {
        uint32_t value = 0;
        for (size_t i = 0; i < bits.size(); i++) {
            if (bits[i] != '0' && bits[i] != '1') {
                fail("expected only 0 and 1 in '" + std::string(bits) + "'");
            }
            value |= uint32_t{bits[i] == '1'} << i;
        }
        return value;
    };

    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string_view> fields;
        size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
                pos++;
            }
            size_t start = pos;
            while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) {
                pos++;
            }
            if (pos > start) {
                fields.push_back(line.substr(start, pos - start));
            }
        }
        if (fields.empty()) {
            continue;
        }
        if (fields.size() != 2) {
            fail("expected '<input bits> <output bits>'");
        }
        if (!table) {
            if (fields[0].size() > MAX_TABLE_INPUTS || fields[1].empty() || fields[1].size() > MAX_TABLE_OUTPUTS) {
                fail("unsupported table shape");
            }
            table.emplace(fields[0].size(), fields[1].size());
            seen.assign(table->rows.size(), false);
        }
        if (fields[0].size() != table->inputs || fields[1].size() != table->outputs) {
            fail("row width differs from the first row");
        }
        uint32_t input = parse_bits(fields[0]);
        if (seen[input]) {
            fail("input " + std::string(fields[0]) + " listed twice");
        }
        seen[input] = true;
        table->rows[input] = parse_bits(fields[1]);
    }
    if (!table) {
        throw Error(ErrorCode::Parse, "truth table is empty");
    }
    auto missing = std::find(seen.begin(), seen.end(), false);
    if (missing != seen.end()) {
        auto row = static_cast<uint32_t>(missing - seen.begin());
        throw Error(ErrorCode::Parse, "input " + bits_to_string(row, table->inputs) + " is missing");
    }
    return std::move(*table);
}

std::string format_truth_table(const TruthTable &table) {
    std::string out;
    for (uint32_t r = 0; r < table.rows.size(); r++) {
        out += bits_to_string(r, table.inputs) + " " + bits_to_string(table.rows[r], table.outputs) + "\n";
    }
    return out;
}

TruthTable builtin_table() {
    TruthTable t(4, 6);
    for (uint32_t r = 0; r < 16; r++) {
        switch (r) {
            case 0b0000:
                t.rows[r] = OUT_MU;
                break;
            case 0b0001:  // front
                t.rows[r] = OUT_ML_A | OUT_MR_A;
                break;
            case 0b0010:  // back
                t.rows[r] = OUT_ML_B | OUT_MR_B;
                break;
            case 0b0100:  // left
                t.rows[r] = OUT_MR_A;
                break;
            case 0b1000:  // right
                t.rows[r] = OUT_ML_A;
                break;
            default:
                t.rows[r] = OUT_ASK;
                break;
        }
    }
    return t;
}

std::string_view motor_state_name(MotorState m) {
    switch (m) {
        case MotorState::Stop:
            return "Stop";
        case MotorState::Forward:
            return "Forward";
        case MotorState::Backward:
            return "Backward";
    }
    return "?";
}

SensorWord SensorWord::from_index(uint32_t index) {
    return SensorWord{(index & 1) != 0, (index & 2) != 0, (index & 4) != 0, (index & 8) != 0};
}

SensorWord SensorWord::from_string(std::string_view text) {
    if (text.size() != 4 || text.find_first_not_of("01") != std::string_view::npos) {
        throw Error(ErrorCode::Parse, "sensor word must be 4 bits S1S2S3S4, got '" + std::string(text) + "'");
    }
    return SensorWord{text[0] == '1', text[1] == '1', text[2] == '1', text[3] == '1'};
}

uint32_t SensorWord::index() const {
    return uint32_t{front} | uint32_t{back} << 1 | uint32_t{left} << 2 | uint32_t{right} << 3;
}

std::string SensorWord::to_string() const {
    return bits_to_string(index(), 4);
}

int SensorWord::popcount() const {
    return std::popcount(index());
}

ControlOutcome decode_outputs(uint32_t outputs) {
    ControlOutcome o;
    o.ml = decode_motor(outputs & OUT_ML_A, outputs & OUT_ML_B, "left");
    o.mr = decode_motor(outputs & OUT_MR_A, outputs & OUT_MR_B, "right");
    o.mu = outputs & OUT_MU;
    o.ask = outputs & OUT_ASK;
    return o;
}

std::string format_table_iv(const ControlOutcome &outcome) {
    std::string s(6, '0');
    s[0] = outcome.ask ? '1' : '0';
    s[1] = outcome.mu ? '1' : '0';
    s[2] = outcome.mr == MotorState::Backward ? '1' : '0';
    s[3] = outcome.mr == MotorState::Forward ? '1' : '0';
    s[4] = outcome.ml == MotorState::Backward ? '1' : '0';
    s[5] = outcome.ml == MotorState::Forward ? '1' : '0';
    return s;
}

SynthesisLayout SynthesisLayout::from_registers(const RegisterMap &registers, size_t num_qubits) {
    registers.validate(num_qubits);
    SynthesisLayout layout;
    layout.num_qubits = num_qubits;
    layout.inputs.assign(registers.sensors.begin(), registers.sensors.end());
    auto outs = registers.outputs();
    layout.outputs.assign(outs.begin(), outs.end());
    layout.ancillas = registers.ancillas;
    return layout;
}

SynthesisLayout SynthesisLayout::packed(size_t inputs, size_t outputs) {
    SynthesisLayout layout;
    uint32_t next = 0;
    for (size_t i = 0; i < inputs; i++) {
        layout.inputs.emplace_back(next++);
    }
    for (size_t i = 0; i < outputs; i++) {
        layout.outputs.emplace_back(next++);
    }
    for (size_t i = 0; inputs >= 3 && i + 1 < inputs; i++) {
        layout.ancillas.emplace_back(next++);
    }
    layout.num_qubits = next;
    return layout;
}

Circuit synthesize(const TruthTable &table, const SynthesisLayout &layout, const SynthesisOptions &options) {
    if (layout.inputs.size() != table.inputs || layout.outputs.size() != table.outputs) {
        throw Error(ErrorCode::Structural, "layout does not match the truth table shape");
    }
    if (table.inputs >= 3 && layout.ancillas.size() + 1 < table.inputs) {
        throw Error(
            ErrorCode::Capacity,
            "layout provides " + std::to_string(layout.ancillas.size()) + " ancillas but " +
                std::to_string(table.inputs - 1) + " are needed to lower the segments");
    }
    std::vector<QubitId> roles = layout.inputs;
    roles.insert(roles.end(), layout.outputs.begin(), layout.outputs.end());
    roles.insert(roles.end(), layout.ancillas.begin(), layout.ancillas.end());
    std::sort(roles.begin(), roles.end());
    if (std::adjacent_find(roles.begin(), roles.end()) != roles.end()) {
        throw Error(ErrorCode::Structural, "synthesis layout roles collide");
    }

    Circuit c(layout.num_qubits);
    for (uint32_t row = 0; row < table.rows.size(); row++) {
        uint32_t out = table.rows[row];
        if (out == 0 || options.omit_segment == row) {
            continue;
        }
        std::vector<Gate> wrap;
        for (size_t i = 0; i < table.inputs; i++) {
            if (((row >> i) & 1) == 0) {
                wrap.push_back(Gate{{}, layout.inputs[i]});
            }
        }
        for (const auto &g : wrap) {
            c.append(g);
        }
        for (size_t j = 0; j < table.outputs; j++) {
            if ((out >> j) & 1) {
                c.append(Gate{layout.inputs, layout.outputs[j]});
            }
        }
        for (auto it = wrap.rbegin(); it != wrap.rend(); ++it) {
            c.append(*it);
        }
    }
    return c;
}

Circuit synthesize(
    const TruthTable &table, const RegisterMap &registers, size_t num_qubits, const SynthesisOptions &options) {
    Circuit c = synthesize(table, SynthesisLayout::from_registers(registers, num_qubits), options);
    c.set_registers(registers);
    return c;
}

Circuit vehicle_controller(bool lowered, const SynthesisOptions &options) {
    Circuit logical = synthesize(builtin_table(), RegisterMap::vehicle(), 13, options);
    return lowered ? lower_circuit(logical) : logical;
}

ControlOutcome evaluate(const Circuit &controller, const SensorWord &sensors) {
    auto out = run_basis(controller, sensor_input(controller, sensors));
    return decode_register(*controller.registers(), out);
}

ControlOutcome evaluate_sampled(const Circuit &controller, const SensorWord &sensors, uint64_t seed) {
    auto state = StateVector::from_basis(sensor_input(controller, sensors));
    state.apply(controller);
    return decode_register(*controller.registers(), measure_all(state, seed));
}

std::string actuator_string(const RegisterMap &registers, const BasisState &state) {
    auto bit = [&](QubitId q) {
        if (q.index >= state.size()) {
            throw Error(ErrorCode::Structural, "register map does not fit the state");
        }
        return state.bits[q.index] ? '1' : '0';
    };
    return {bit(registers.ask), bit(registers.mu), bit(registers.mr[1]),
            bit(registers.mr[0]), bit(registers.ml[1]), bit(registers.ml[0])};
}

}  // namespace qbot
