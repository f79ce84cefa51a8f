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

#ifndef QBOT_TEST_UTIL_TEST_H
#define QBOT_TEST_UTIL_TEST_H

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "qbot/error.h"
#include "qbot/qsim.h"

namespace qbot {

template <typename Body>
void expect_error(ErrorCode code, Body &&body) {
    try {
        body();
        ADD_FAILURE() << "expected qbot::Error " << error_code_name(code);
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

/// Uniformly random X-family gates with up to max_controls controls.
inline Circuit random_x_family_circuit(std::mt19937_64 &rng, size_t n, size_t num_gates, size_t max_controls) {
    Circuit c(n);
    std::vector<uint32_t> qubits(n);
    for (size_t i = 0; i < n; i++) {
        qubits[i] = static_cast<uint32_t>(i);
    }
    for (size_t g = 0; g < num_gates; g++) {
        std::shuffle(qubits.begin(), qubits.end(), rng);
        size_t k = rng() % (std::min(max_controls, n - 1) + 1);
        Gate gate;
        gate.target = QubitId(qubits[0]);
        for (size_t i = 0; i < k; i++) {
            gate.controls.emplace_back(qubits[i + 1]);
        }
        c.append(std::move(gate));
    }
    return c;
}

inline std::string read_test_file(const std::string &relative) {
    std::ifstream in(std::string(QBOT_TEST_DATA_DIR) + "/" + relative, std::ios::binary);
    if (!in) {
        throw std::runtime_error("missing test data " + relative);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qbot

#endif
