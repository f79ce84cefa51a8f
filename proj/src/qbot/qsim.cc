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

#include "qbot/qsim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "qbot/error.h"

namespace qbot {

namespace {

std::string qubit_name(QubitId q) {
    return "q[" + std::to_string(q.index) + "]";
}

void check_in_range(const Gate &gate, size_t num_qubits) {
    auto check = [&](QubitId q) {
        if (q.index >= num_qubits) {
            throw Error(
                ErrorCode::Structural,
                "gate references " + qubit_name(q) + " but the register has " + std::to_string(num_qubits) +
                    " qubits");
        }
    };
    check(gate.target);
    for (auto c : gate.controls) {
        check(c);
    }
}

void check_mode(const Gate &gate, ExecutionMode mode) {
    if (mode == ExecutionMode::Native && !gate.is_native()) {
        throw Error(
            ErrorCode::Structural,
            "gate with " + std::to_string(gate.num_controls()) + " controls is not native; lower it first");
    }
}

uint64_t control_mask(const Gate &gate) {
    uint64_t mask = 0;
    for (auto c : gate.controls) {
        mask |= uint64_t{1} << c.index;
    }
    return mask;
}

}  // namespace

Gate Gate::x(uint32_t target) {
    return Gate{{}, QubitId(target)};
}

Gate Gate::cx(uint32_t control, uint32_t target) {
    Gate g{{QubitId(control)}, QubitId(target)};
    g.validate_shape();
    return g;
}

Gate Gate::ccx(uint32_t control1, uint32_t control2, uint32_t target) {
    Gate g{{QubitId(control1), QubitId(control2)}, QubitId(target)};
    g.validate_shape();
    return g;
}

Gate Gate::mcx(std::vector<QubitId> controls, QubitId target) {
    Gate g{std::move(controls), target};
    g.validate_shape();
    return g;
}

void Gate::validate_shape() const {
    for (size_t i = 0; i < controls.size(); i++) {
        if (controls[i] == target) {
            throw Error(ErrorCode::Structural, "target " + qubit_name(target) + " is also a control");
        }
        for (size_t j = i + 1; j < controls.size(); j++) {
            if (controls[i] == controls[j]) {
                throw Error(ErrorCode::Structural, "control " + qubit_name(controls[i]) + " repeated");
            }
        }
    }
}

RegisterMap RegisterMap::vehicle() {
    RegisterMap r;
    r.sensors = {QubitId(0), QubitId(1), QubitId(2), QubitId(3)};
    r.ancillas = {QubitId(4), QubitId(5), QubitId(6)};
    r.ml = {QubitId(7), QubitId(8)};
    r.mr = {QubitId(9), QubitId(10)};
    r.mu = QubitId(11);
    r.ask = QubitId(12);
    return r;
}

std::array<QubitId, 6> RegisterMap::outputs() const {
    return {ml[0], ml[1], mr[0], mr[1], mu, ask};
}

void RegisterMap::validate(size_t num_qubits) const {
    std::vector<QubitId> all(sensors.begin(), sensors.end());
    all.insert(all.end(), ancillas.begin(), ancillas.end());
    auto outs = outputs();
    all.insert(all.end(), outs.begin(), outs.end());
    for (auto q : all) {
        if (q.index >= num_qubits) {
            throw Error(
                ErrorCode::Structural,
                "register role " + qubit_name(q) + " outside a " + std::to_string(num_qubits) + " qubit register");
        }
    }
    std::sort(all.begin(), all.end());
    auto dup = std::adjacent_find(all.begin(), all.end());
    if (dup != all.end()) {
        throw Error(ErrorCode::Structural, "register roles collide on " + qubit_name(*dup));
    }
}

Circuit::Circuit(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw Error(ErrorCode::Structural, "a circuit needs at least one qubit");
    }
}

void Circuit::append(Gate gate) {
    gate.validate_shape();
    check_in_range(gate, num_qubits_);
    gates_.push_back(std::move(gate));
}

void Circuit::set_registers(RegisterMap registers) {
    registers.validate(num_qubits_);
    registers_ = std::move(registers);
}

bool Circuit::is_native() const {
    return max_controls() <= 2;
}

size_t Circuit::max_controls() const {
    size_t result = 0;
    for (const auto &g : gates_) {
        result = std::max(result, g.num_controls());
    }
    return result;
}

BasisState BasisState::from_index(size_t n, uint64_t index) {
    BasisState b(n);
    for (size_t i = 0; i < n; i++) {
        b.bits[i] = (index >> i) & 1;
    }
    return b;
}

BasisState BasisState::from_string(std::string_view text) {
    BasisState b(text.size());
    for (size_t i = 0; i < text.size(); i++) {
        if (text[i] != '0' && text[i] != '1') {
            throw Error(ErrorCode::Parse, "basis state must contain only 0 and 1, got '" + std::string(text) + "'");
        }
        b.bits[i] = text[i] == '1';
    }
    return b;
}

uint64_t BasisState::index() const {
    if (bits.size() > 64) {
        throw Error(ErrorCode::Capacity, "basis state wider than 64 bits has no integer index");
    }
    uint64_t result = 0;
    for (size_t i = 0; i < bits.size(); i++) {
        result |= uint64_t{bits[i]} << i;
    }
    return result;
}

std::string BasisState::to_string() const {
    std::string s;
    s.reserve(bits.size());
    for (bool b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

StateVector::StateVector(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > MAX_STATE_QUBITS) {
        throw Error(
            ErrorCode::Capacity,
            "state vector size " + std::to_string(num_qubits) + " outside [1, " + std::to_string(MAX_STATE_QUBITS) +
                "]");
    }
    amplitudes_.assign(size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector StateVector::from_basis(const BasisState &basis) {
    StateVector s(basis.size());
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[basis.index()] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::optional<uint64_t> StateVector::basis_index(double tolerance) const {
    for (size_t i = 0; i < amplitudes_.size(); i++) {
        if (std::abs(std::abs(amplitudes_[i]) - 1.0) <= tolerance) {
            return i;
        }
    }
    return std::nullopt;
}

void StateVector::apply(const Gate &gate, ExecutionMode mode) {
    gate.validate_shape();
    check_in_range(gate, num_qubits_);
    check_mode(gate, mode);

    uint64_t controls = control_mask(gate);
    uint64_t flip = uint64_t{1} << gate.target.index;
    // Visit each pair once, from the member whose target bit is 0.
    for (uint64_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & flip) == 0 && (i & controls) == controls) {
            std::swap(amplitudes_[i], amplitudes_[i | flip]);
        }
    }
}

void StateVector::apply(const Circuit &circuit, ExecutionMode mode) {
    if (circuit.num_qubits() != num_qubits_) {
        throw Error(
            ErrorCode::Structural,
            "circuit has " + std::to_string(circuit.num_qubits()) + " qubits but the state has " +
                std::to_string(num_qubits_));
    }
    for (const auto &g : circuit.gates()) {
        apply(g, mode);
    }
}

StateVector new_state(size_t num_qubits) {
    return StateVector(num_qubits);
}

StateVector apply_gate(StateVector state, const Gate &gate, ExecutionMode mode) {
    state.apply(gate, mode);
    return state;
}

BasisState run_basis(const Circuit &circuit, const BasisState &input, ExecutionMode mode) {
    if (input.size() != circuit.num_qubits()) {
        throw Error(
            ErrorCode::Structural,
            "input has " + std::to_string(input.size()) + " bits but the circuit has " +
                std::to_string(circuit.num_qubits()) + " qubits");
    }
    BasisState state = input;
    for (const auto &g : circuit.gates()) {
        check_mode(g, mode);
        bool fire = std::all_of(g.controls.begin(), g.controls.end(), [&](QubitId c) {
            return state.bits[c.index];
        });
        if (fire) {
            state.bits[g.target.index] = !state.bits[g.target.index];
        }
    }
    return state;
}

BasisState measure_all(const StateVector &state, uint64_t seed) {
    constexpr double NORM_TOLERANCE = 1e-9;
    double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > NORM_TOLERANCE) {
        throw Error(ErrorCode::Numerical, "cannot measure an unnormalized state (norm^2 = " + std::to_string(norm) + ")");
    }
    if (auto index = state.basis_index()) {
        return BasisState::from_index(state.num_qubits(), *index);
    }

    std::mt19937_64 rng(seed);
    // 53 random mantissa bits, so the draw does not depend on the standard
    // library's distribution implementation.
    double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53 * norm;
    auto amps = state.amplitudes();
    double cumulative = 0;
    uint64_t last_nonzero = 0;
    for (uint64_t i = 0; i < amps.size(); i++) {
        double p = std::norm(amps[i]);
        if (p == 0) {
            continue;
        }
        last_nonzero = i;
        cumulative += p;
        if (draw < cumulative) {
            return BasisState::from_index(state.num_qubits(), i);
        }
    }
    return BasisState::from_index(state.num_qubits(), last_nonzero);
}

DenseMatrix as_unitary(const Circuit &circuit, ExecutionMode mode) {
    size_t n = circuit.num_qubits();
    if (n > MAX_DENSE_QUBITS) {
        throw Error(
            ErrorCode::Capacity,
            "dense unitary of " + std::to_string(n) + " qubits exceeds the cap of " + std::to_string(MAX_DENSE_QUBITS));
    }
    DenseMatrix m;
    m.dim = size_t{1} << n;
    m.data.assign(m.dim * m.dim, 0.0);
    for (size_t col = 0; col < m.dim; col++) {
        StateVector s = StateVector::from_basis(BasisState::from_index(n, col));
        s.apply(circuit, mode);
        auto amps = s.amplitudes();
        for (size_t row = 0; row < m.dim; row++) {
            m.data[row * m.dim + col] = amps[row];
        }
    }
    return m;
}

}  // namespace qbot
