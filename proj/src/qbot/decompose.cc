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

#include "qbot/decompose.h"

#include <algorithm>

#include "qbot/error.h"

namespace qbot {

namespace {

constexpr size_t MAX_VERIFY_CONTROLS = 6;

void require_distinct(const std::vector<QubitId> &controls, QubitId target, const std::vector<QubitId> &ancillas) {
    std::vector<QubitId> all = controls;
    all.push_back(target);
    all.insert(all.end(), ancillas.begin(), ancillas.end());
    std::sort(all.begin(), all.end());
    auto dup = std::adjacent_find(all.begin(), all.end());
    if (dup != all.end()) {
        throw Error(
            ErrorCode::Structural, "qubit q[" + std::to_string(dup->index) + "] used twice in an MCX decomposition");
    }
}

Gate ccx(QubitId a, QubitId b, QubitId t) {
    return Gate{{a, b}, t};
}

}  // namespace

DecompositionPlan decompose_mcx(
    const std::vector<QubitId> &controls, QubitId target, const std::vector<QubitId> &ancillas) {
    size_t k = controls.size();
    size_t needed = k >= 3 ? k - 1 : 0;
    if (ancillas.size() < needed) {
        throw Error(
            ErrorCode::Capacity,
            std::to_string(k) + "-control NOT needs " + std::to_string(needed) + " ancillas, got " +
                std::to_string(ancillas.size()));
    }
    require_distinct(controls, target, ancillas);

    DecompositionPlan plan;
    plan.k = k;
    plan.ancillas_needed = needed;
    if (k <= 2) {
        plan.gates.push_back(Gate{controls, target});
        plan.compute_prefix_len = 0;
        return plan;
    }

    std::vector<Gate> compute;
    compute.push_back(ccx(controls[0], controls[1], ancillas[0]));
    for (size_t i = 0; i + 2 < k; i++) {
        compute.push_back(ccx(ancillas[i], controls[i + 2], ancillas[i + 1]));
    }

    plan.gates = compute;
    plan.compute_prefix_len = compute.size();
    plan.gates.push_back(Gate{{ancillas[k - 2]}, target});
    plan.gates.insert(plan.gates.end(), compute.rbegin(), compute.rend());
    return plan;
}

Circuit lower_circuit(const Circuit &circuit) {
    Circuit out(circuit.num_qubits());
    if (circuit.registers()) {
        out.set_registers(*circuit.registers());
    }
    const std::vector<QubitId> empty;
    const auto &pool = circuit.registers() ? circuit.registers()->ancillas : empty;

    for (const auto &g : circuit.gates()) {
        if (g.is_native()) {
            out.append(g);
            continue;
        }
        auto plan = decompose_mcx(g.controls, g.target, pool);
        for (auto &lowered : plan.gates) {
            out.append(std::move(lowered));
        }
    }
    return out;
}

McxLayout McxLayout::for_controls(size_t k) {
    McxLayout layout;
    uint32_t next = 0;
    for (size_t i = 0; i < k; i++) {
        layout.controls.emplace_back(next++);
    }
    size_t ancillas = k >= 3 ? k - 1 : 0;
    for (size_t i = 0; i < ancillas; i++) {
        layout.ancillas.emplace_back(next++);
    }
    layout.target = QubitId(next++);
    layout.num_qubits = next;
    return layout;
}

Circuit mcx_plan_circuit(size_t k) {
    auto layout = McxLayout::for_controls(k);
    auto plan = decompose_mcx(layout.controls, layout.target, layout.ancillas);
    Circuit c(layout.num_qubits);
    for (auto &g : plan.gates) {
        c.append(std::move(g));
    }
    return c;
}

EquivalenceReport verify_equivalence(size_t k) {
    if (k > MAX_VERIFY_CONTROLS) {
        throw Error(
            ErrorCode::Capacity,
            "equivalence sweep supports at most " + std::to_string(MAX_VERIFY_CONTROLS) + " controls, got " +
                std::to_string(k));
    }
    auto layout = McxLayout::for_controls(k);
    auto plan = decompose_mcx(layout.controls, layout.target, layout.ancillas);
    Circuit lowered(layout.num_qubits);
    for (const auto &g : plan.gates) {
        lowered.append(g);
    }
    Circuit logical(layout.num_qubits);
    logical.append(Gate{layout.controls, layout.target});

    EquivalenceReport report;
    report.k = k;
    report.ancillas_used = plan.ancillas_needed;
    for (const auto &g : plan.gates) {
        report.ccx_count += g.num_controls() == 2;
        report.cx_count += g.num_controls() == 1;
    }

    // Enumerate (controls, target); ancillas stay 0 in every input.
    for (uint64_t pattern = 0; pattern < (uint64_t{1} << (k + 1)); pattern++) {
        BasisState input(layout.num_qubits);
        for (size_t i = 0; i < k; i++) {
            input.bits[layout.controls[i].index] = (pattern >> i) & 1;
        }
        input.bits[layout.target.index] = (pattern >> k) & 1;

        StateVector expected = StateVector::from_basis(input);
        expected.apply(logical, ExecutionMode::Logical);
        StateVector actual = StateVector::from_basis(input);
        actual.apply(lowered, ExecutionMode::Native);

        auto expected_bits = measure_all(expected, 0);
        auto actual_bits = measure_all(actual, 0);
        bool ancillas_clean = std::none_of(layout.ancillas.begin(), layout.ancillas.end(), [&](QubitId a) {
            return actual_bits.bits[a.index];
        });

        report.cases++;
        if (expected_bits == actual_bits && ancillas_clean) {
            report.matches++;
        } else if (!report.counterexample) {
            report.counterexample = "input " + input.to_string() + ": expected " + expected_bits.to_string() +
                                    ", got " + actual_bits.to_string();
        }
    }
    return report;
}

}  // namespace qbot
