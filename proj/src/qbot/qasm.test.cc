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

#include "qbot/qasm.h"

#include <gtest/gtest.h>

#include <random>

#include "qbot/controller.h"
#include "qbot/decompose.h"
#include "qbot/test_util.test.h"

using namespace qbot;

TEST(qasm, format) {
    Circuit c(3);
    c.append(Gate::x(0));
    c.append(Gate::cx(0, 2));
    c.append(Gate::ccx(0, 1, 2));
    ASSERT_EQ(to_qasm(c),
              "OPENQASM 2.0;\n"
              "qreg q[3];\n"
              "x q[0];\n"
              "cx q[0],q[2];\n"
              "ccx q[0],q[1],q[2];\n");
}

TEST(qasm, format_rejects_mcx) {
    Circuit c(4);
    c.append(Gate::mcx({QubitId(0), QubitId(1), QubitId(2)}, QubitId(3)));
    expect_error(ErrorCode::Structural, [&] {
        to_qasm(c);
    });
}

TEST(qasm, parse_tolerates_whitespace) {
    auto c = from_qasm("OPENQASM 2.0;\n\n  qreg q[2];\n  cx q[1], q[0] ;\n\n");
    ASSERT_EQ(c.num_qubits(), 2u);
    ASSERT_EQ(c.gates().size(), 1u);
    ASSERT_EQ(c.gates()[0], Gate::cx(1, 0));
}

TEST(qasm, parse_errors_carry_line) {
    auto expect_parse = [](std::string_view text, std::string_view fragment) {
        try {
            from_qasm(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::Parse);
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    expect_parse("", "line 1");
    expect_parse("qreg q[2];\n", "line 1");
    expect_parse("OPENQASM 2.0;\nx q[0];\n", "line 2");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n", "line 3");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\nx q[0];\nqreg r[1];\n", "line 4");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n", "line 3");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\nx q[7];\n", "line 3");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\nx q[0]\n", "line 3");
    expect_parse("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[0];\n", "line 3");
}

TEST(qasm, lowered_controller_round_trip) {
    auto text = to_qasm(lower_circuit(synthesize(builtin_table(), RegisterMap::vehicle(), 13)));
    ASSERT_EQ(to_qasm(from_qasm(text)), text);
}

TEST(qasm_property, round_trip_random) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + rng() % 16;
        auto c = random_x_family_circuit(rng, n, rng() % 50, 2);
        auto text = to_qasm(c);
        auto parsed = from_qasm(text);
        ASSERT_EQ(parsed, c);
        ASSERT_EQ(to_qasm(parsed), text);
    }
}
