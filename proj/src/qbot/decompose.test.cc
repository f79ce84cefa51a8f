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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qbot/test_util.test.h"

using namespace qbot;

namespace {

std::vector<QubitId> ids(std::initializer_list<uint32_t> v) {
    std::vector<QubitId> out;
    for (auto i : v) {
        out.emplace_back(i);
    }
    return out;
}

size_t count_controls(const std::vector<Gate> &gates, size_t k) {
    return std::count_if(gates.begin(), gates.end(), [&](const Gate &g) {
        return g.num_controls() == k;
    });
}

/// Independent MCX definition over McxLayout::for_controls(k) indices.
uint64_t mcx_oracle(size_t k, uint64_t in) {
    auto layout = McxLayout::for_controls(k);
    for (auto c : layout.controls) {
        if (!((in >> c.index) & 1)) {
            return in;
        }
    }
    return in ^ (uint64_t{1} << layout.target.index);
}

bool ancillas_clear(const McxLayout &layout, uint64_t index) {
    for (auto a : layout.ancillas) {
        if ((index >> a.index) & 1) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(decompose, native_gates_unchanged) {
    auto p0 = decompose_mcx({}, QubitId(0), {});
    ASSERT_EQ(p0.gates, std::vector<Gate>{Gate::x(0)});
    ASSERT_EQ(p0.ancillas_needed, 0u);

    auto p2 = decompose_mcx(ids({0, 1}), QubitId(2), ids({3, 4}));
    ASSERT_EQ(p2.gates, std::vector<Gate>{Gate::ccx(0, 1, 2)});
    ASSERT_EQ(p2.ancillas_needed, 0u);
    ASSERT_EQ(p2.compute_prefix_len, 0u);
}

TEST(decompose, k3_counts) {
    auto p = decompose_mcx(ids({0, 1, 2}), QubitId(5), ids({3, 4}));
    ASSERT_EQ(p.ancillas_needed, 2u);
    ASSERT_EQ(count_controls(p.gates, 2), 4u);
    ASSERT_EQ(count_controls(p.gates, 1), 1u);
    ASSERT_EQ(p.gates.size(), 5u);
}

TEST(decompose, k4_matches_extra_qubit_layout) {
    auto p = decompose_mcx(ids({0, 1, 2, 3}), QubitId(7), ids({4, 5, 6}));
    ASSERT_EQ(p.ancillas_needed, 3u);
    ASSERT_EQ(count_controls(p.gates, 2), 6u);
    ASSERT_EQ(count_controls(p.gates, 1), 1u);
    std::vector<Gate> expected{
        Gate::ccx(0, 1, 4),
        Gate::ccx(4, 2, 5),
        Gate::ccx(5, 3, 6),
        Gate::cx(6, 7),
        Gate::ccx(5, 3, 6),
        Gate::ccx(4, 2, 5),
        Gate::ccx(0, 1, 4),
    };
    ASSERT_EQ(p.gates, expected);
    ASSERT_EQ(p.target_flip(), Gate::cx(6, 7));
}

TEST(decompose, surplus_ancillas_untouched) {
    auto p = decompose_mcx(ids({0, 1, 2}), QubitId(3), ids({4, 5, 6, 7}));
    for (const auto &g : p.gates) {
        for (auto q : g.controls) {
            ASSERT_LT(q.index, 6u);
        }
        ASSERT_LT(g.target.index, 6u);
    }
}

TEST(decompose, errors) {
    expect_error(ErrorCode::Capacity, [] {
        decompose_mcx(ids({0, 1, 2, 3}), QubitId(7), ids({4, 5}));
    });
    expect_error(ErrorCode::Structural, [] {
        decompose_mcx(ids({0, 1, 2}), QubitId(2), ids({4, 5}));
    });
    expect_error(ErrorCode::Structural, [] {
        decompose_mcx(ids({0, 1, 2}), QubitId(3), ids({1, 5}));
    });
    expect_error(ErrorCode::Structural, [] {
        decompose_mcx(ids({0, 1, 1}), QubitId(3), ids({4, 5}));
    });
    expect_error(ErrorCode::Capacity, [] {
        verify_equivalence(7);
    });
}

TEST(decompose, plan_structure_all_k) {
    for (size_t k = 3; k <= 10; k++) {
        auto layout = McxLayout::for_controls(k);
        auto p = decompose_mcx(layout.controls, layout.target, layout.ancillas);
        ASSERT_EQ(p.ancillas_needed, k - 1);
        ASSERT_EQ(count_controls(p.gates, 2), 2 * (k - 1));
        ASSERT_EQ(count_controls(p.gates, 1), 1u);
        ASSERT_EQ(p.gates.size(), 2 * (k - 1) + 1);
        ASSERT_EQ(p.compute_prefix_len, k - 1);
        ASSERT_EQ(p.target_flip().target, layout.target);
        std::vector<Gate> before(p.gates.begin(), p.gates.begin() + p.compute_prefix_len);
        std::vector<Gate> after(p.gates.begin() + p.compute_prefix_len + 1, p.gates.end());
        std::reverse(before.begin(), before.end());
        ASSERT_EQ(before, after) << "k=" << k;
    }
}

TEST(decompose, verify_equivalence_examples) {
    auto r4 = verify_equivalence(4);
    ASSERT_TRUE(r4.passed());
    ASSERT_EQ(r4.cases, 32u);
    ASSERT_EQ(r4.ancillas_used, 3u);
    ASSERT_EQ(r4.ccx_count, 6u);
    ASSERT_EQ(r4.cx_count, 1u);

    auto r5 = verify_equivalence(5);
    ASSERT_EQ(r5.cases, 64u);
    ASSERT_EQ(r5.matches, 64u);
    ASSERT_FALSE(r5.counterexample.has_value());

    // Controls 1111 fire the target, 1101 does not; ancillas stay clean.
    auto layout = McxLayout::for_controls(4);
    auto plan = mcx_plan_circuit(4);
    auto fire = run_basis(plan, BasisState::from_index(layout.num_qubits, 0b1111), ExecutionMode::Native);
    ASSERT_TRUE(fire.bits[layout.target.index]);
    auto idle = run_basis(plan, BasisState::from_index(layout.num_qubits, 0b1011), ExecutionMode::Native);
    ASSERT_FALSE(idle.bits[layout.target.index]);
    for (auto a : layout.ancillas) {
        ASSERT_FALSE(fire.bits[a.index]);
        ASSERT_FALSE(idle.bits[a.index]);
    }
}

TEST(decompose, unitary_equivalence_on_clean_ancillas) {
    for (size_t k = 0; k <= 6; k++) {
        auto layout = McxLayout::for_controls(k);
        auto plan = mcx_plan_circuit(k);
        ASSERT_TRUE(plan.is_native());
        uint64_t dim = uint64_t{1} << layout.num_qubits;
        if (layout.num_qubits <= 10) {
            auto u = as_unitary(plan, ExecutionMode::Native);
            for (uint64_t col = 0; col < dim; col++) {
                if (!ancillas_clear(layout, col)) {
                    continue;
                }
                auto expect = mcx_oracle(k, col);
                for (uint64_t row = 0; row < dim; row++) {
                    ASSERT_EQ(u.at(row, col), row == expect ? 1.0 : 0.0) << "k=" << k;
                }
            }
        } else {
            // Column by column; the dense matrix would be 4096x4096.
            for (uint64_t col = 0; col < dim; col++) {
                if (!ancillas_clear(layout, col)) {
                    continue;
                }
                auto s = StateVector::from_basis(BasisState::from_index(layout.num_qubits, col));
                s.apply(plan, ExecutionMode::Native);
                ASSERT_EQ(s.basis_index(), mcx_oracle(k, col)) << "k=" << k;
                ASSERT_EQ(s.amplitudes()[mcx_oracle(k, col)], std::complex<double>(1));
            }
        }
    }
}

TEST(lower_circuit, c4x_on_vehicle_pool) {
    Circuit c(13);
    c.set_registers(RegisterMap::vehicle());
    c.append(Gate::mcx(ids({0, 1, 2, 3}), QubitId(7)));
    auto lowered = lower_circuit(c);
    ASSERT_TRUE(lowered.is_native());
    ASSERT_EQ(lowered.registers(), c.registers());
    std::vector<uint32_t> touched;
    for (const auto &g : lowered.gates()) {
        for (auto q : g.controls) {
            touched.push_back(q.index);
        }
        touched.push_back(g.target.index);
    }
    for (uint32_t a : {4u, 5u, 6u}) {
        ASSERT_NE(std::find(touched.begin(), touched.end(), a), touched.end());
    }
    for (uint64_t in = 0; in < 16; in++) {
        auto out = run_basis(lowered, BasisState::from_index(13, in), ExecutionMode::Native);
        ASSERT_EQ(out.index(), in == 15 ? in | (1u << 7) : in);
    }
}

TEST(lower_circuit, native_pass_through) {
    std::mt19937_64 rng(3);
    auto c = random_x_family_circuit(rng, 6, 30, 2);
    ASSERT_EQ(lower_circuit(c), c);
}

TEST(lower_circuit, pool_too_small) {
    Circuit c(13);
    auto regs = RegisterMap::vehicle();
    regs.ancillas.pop_back();
    c.set_registers(regs);
    c.append(Gate::mcx(ids({0, 1, 2, 3}), QubitId(7)));
    expect_error(ErrorCode::Capacity, [&] {
        lower_circuit(c);
    });
    Circuit bare(5);
    bare.append(Gate::mcx(ids({0, 1, 2}), QubitId(4)));
    expect_error(ErrorCode::Capacity, [&] {
        lower_circuit(bare);
    });
}

TEST(lower_circuit, sequential_mcx_share_pool) {
    Circuit logical(13);
    logical.set_registers(RegisterMap::vehicle());
    logical.append(Gate::mcx(ids({0, 1, 2, 3}), QubitId(7)));
    logical.append(Gate::x(1));
    logical.append(Gate::mcx(ids({0, 1, 2, 7}), QubitId(12)));
    auto lowered = lower_circuit(logical);
    ASSERT_TRUE(lowered.is_native());
    ASSERT_EQ(lowered.gates().size(), 7u + 1u + 7u);

    // Exhaustive over the 2^10 inputs whose pool qubits q4..q6 are clear.
    for (uint64_t in = 0; in < 8192; in++) {
        if (in & 0b1110000) {
            continue;
        }
        auto want = run_basis(logical, BasisState::from_index(13, in));
        auto got = StateVector::from_basis(BasisState::from_index(13, in));
        got.apply(lowered, ExecutionMode::Native);
        ASSERT_EQ(got.basis_index(), want.index()) << in;
    }
}
