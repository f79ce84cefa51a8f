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

#ifndef QBOT_DECOMPOSE_H
#define QBOT_DECOMPOSE_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qbot/qsim.h"

namespace qbot {

/// Native (<= 2 control) realisation of one multi-controlled NOT.
///
/// For k >= 3 the gates are an AND chain over k - 1 clean ancillas:
///
///     CCX(c1, c2 -> a1)
///     CCX(a_i, c_{i+2} -> a_{i+1})     for i = 1 .. k-2
///     CX(a_{k-1} -> target)
///     ... the k-1 CCX gates again, in reverse order
///
/// Ancillas must start at 0 and are returned to 0.
struct DecompositionPlan {
    size_t k = 0;
    size_t ancillas_needed = 0;
    std::vector<Gate> gates;
    /// Number of gates before the target flip.
    size_t compute_prefix_len = 0;

    const Gate &target_flip() const {
        return gates[compute_prefix_len];
    }
};

/// Throws Capacity if fewer than k - 1 ancillas are given, Structural if any
/// qubit appears twice across controls, target and ancillas. Surplus ancillas
/// are left untouched.
DecompositionPlan decompose_mcx(
    const std::vector<QubitId> &controls, QubitId target, const std::vector<QubitId> &ancillas);

/// Rewrites every gate with three or more controls using the circuit's
/// register ancilla pool. The pool is reused by each lowering in turn.
Circuit lower_circuit(const Circuit &circuit);

/// Register layout used for stand-alone k-control plans: controls q0..q(k-1),
/// ancillas next, target last.
struct McxLayout {
    std::vector<QubitId> controls;
    std::vector<QubitId> ancillas;
    QubitId target;
    size_t num_qubits = 0;

    static McxLayout for_controls(size_t k);
};

/// The lowered plan for k controls as a circuit over McxLayout::for_controls(k).
Circuit mcx_plan_circuit(size_t k);

struct EquivalenceReport {
    size_t k = 0;
    size_t cases = 0;
    size_t matches = 0;
    size_t ancillas_used = 0;
    size_t ccx_count = 0;
    size_t cx_count = 0;
    /// Description of the first failing input, if any.
    std::optional<std::string> counterexample;

    bool passed() const {
        return cases > 0 && matches == cases;
    }
};

/// Exhaustive check of the lowered k-control plan against the logical MCX,
/// over all 2^(k+1) (controls, target) inputs with clean ancillas. Each case
/// must reproduce the logical output and leave every ancilla at 0.
/// Throws Capacity for k > 6.
EquivalenceReport verify_equivalence(size_t k);

}  // namespace qbot

#endif
