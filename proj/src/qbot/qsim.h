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

#ifndef QBOT_QSIM_H
#define QBOT_QSIM_H

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbot {

/// Largest register a state vector may hold.
constexpr size_t MAX_STATE_QUBITS = 24;
/// Largest register `as_unitary` will densify.
constexpr size_t MAX_DENSE_QUBITS = 12;

/// Position of a qubit in the register. Qubit i is bit i of a basis index.
struct QubitId {
    uint32_t index = 0;

    constexpr QubitId() = default;
    constexpr explicit QubitId(uint32_t i) : index(i) {
    }
    friend constexpr auto operator<=>(const QubitId &, const QubitId &) = default;
};

/// An X-family gate: NOT on `target`, conditioned on every control being 1.
///
/// Zero controls is X, one is CX, two is CCX. Three or more is a logical MCX
/// that must be lowered (see decompose.h) before native execution.
struct Gate {
    std::vector<QubitId> controls;
    QubitId target;

    static Gate x(uint32_t target);
    static Gate cx(uint32_t control, uint32_t target);
    static Gate ccx(uint32_t control1, uint32_t control2, uint32_t target);
    static Gate mcx(std::vector<QubitId> controls, QubitId target);

    size_t num_controls() const {
        return controls.size();
    }
    bool is_native() const {
        return controls.size() <= 2;
    }
    /// Throws Structural if the target is also a control or controls repeat.
    void validate_shape() const;

    bool operator==(const Gate &other) const = default;
};

/// Named roles of the controller register.
///
/// sensors are S1..S4 (front, back, left, right). ml and mr are the (A, B)
/// qubits of the left and right motor.
struct RegisterMap {
    std::array<QubitId, 4> sensors{};
    std::vector<QubitId> ancillas;
    std::array<QubitId, 2> ml{};
    std::array<QubitId, 2> mr{};
    QubitId mu;
    QubitId ask;

    /// The 13 qubit vehicle layout: sensors q0-q3, ancillas q4-q6, ML q7-q8,
    /// MR q9-q10, MU q11, ASK q12.
    static RegisterMap vehicle();

    /// Output qubits in truth table order: ML_A, ML_B, MR_A, MR_B, MU, ASK.
    std::array<QubitId, 6> outputs() const;
    /// Throws Structural if roles overlap or reference qubits >= num_qubits.
    void validate(size_t num_qubits) const;

    bool operator==(const RegisterMap &other) const = default;
};

class Circuit {
   public:
    explicit Circuit(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    const std::optional<RegisterMap> &registers() const {
        return registers_;
    }

    /// Appends after checking the gate shape and qubit range.
    void append(Gate gate);
    void set_registers(RegisterMap registers);
    void clear_registers() {
        registers_.reset();
    }

    /// True when every gate has at most two controls.
    bool is_native() const;
    size_t max_controls() const;

    bool operator==(const Circuit &other) const = default;

   private:
    size_t num_qubits_;
    std::vector<Gate> gates_;
    std::optional<RegisterMap> registers_;
};

/// Logical mode applies MCX by definition. Native mode rejects gates with
/// more than two controls.
enum class ExecutionMode { Logical, Native };

/// Classical register contents. bits[i] is the value of qubit i.
struct BasisState {
    std::vector<bool> bits;

    BasisState() = default;
    explicit BasisState(size_t n) : bits(n, false) {
    }
    static BasisState from_index(size_t n, uint64_t index);
    /// Parses "0101..." where character i is qubit i.
    static BasisState from_string(std::string_view text);

    size_t size() const {
        return bits.size();
    }
    uint64_t index() const;
    std::string to_string() const;

    bool operator==(const BasisState &other) const = default;
};

class StateVector {
   public:
    using Amplitude = std::complex<double>;

    /// |0...0> on n qubits. Throws Capacity unless 1 <= n <= MAX_STATE_QUBITS.
    explicit StateVector(size_t num_qubits);
    static StateVector from_basis(const BasisState &basis);

    size_t num_qubits() const {
        return num_qubits_;
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    std::span<Amplitude> amplitudes() {
        return amplitudes_;
    }
    double norm_squared() const;

    /// Index of the amplitude with modulus 1, if this is a basis state.
    std::optional<uint64_t> basis_index(double tolerance = 1e-12) const;

    void apply(const Gate &gate, ExecutionMode mode = ExecutionMode::Logical);
    void apply(const Circuit &circuit, ExecutionMode mode = ExecutionMode::Logical);

   private:
    size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

StateVector new_state(size_t num_qubits);
StateVector apply_gate(StateVector state, const Gate &gate, ExecutionMode mode = ExecutionMode::Logical);

/// Bitstring fast path: flip the target wherever every control is set.
BasisState run_basis(const Circuit &circuit, const BasisState &input, ExecutionMode mode = ExecutionMode::Logical);

/// Samples a basis state with probability |amp|^2. A basis state is returned
/// as is, without consulting the seed.
BasisState measure_all(const StateVector &state, uint64_t seed);

/// Row-major dense square matrix.
struct DenseMatrix {
    size_t dim = 0;
    std::vector<std::complex<double>> data;

    const std::complex<double> &at(size_t row, size_t col) const {
        return data[row * dim + col];
    }
    bool operator==(const DenseMatrix &other) const = default;
};

/// Column j is the state obtained by running the circuit on basis state j.
DenseMatrix as_unitary(const Circuit &circuit, ExecutionMode mode = ExecutionMode::Logical);

}  // namespace qbot

#endif
