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

#ifndef QBOT_QASM_H
#define QBOT_QASM_H

#include <string>
#include <string_view>

#include "qbot/qsim.h"

namespace qbot {

/// Writes the OpenQASM 2.0 subset:
///
///     OPENQASM 2.0;
///     qreg q[N];
///     x q[t];
///     cx q[c],q[t];
///     ccx q[c1],q[c2],q[t];
///
/// Every line is newline terminated. Throws Structural for gates with more
/// than two controls; lower the circuit first.
std::string to_qasm(const Circuit &circuit);

/// Inverse of to_qasm. Blank lines are skipped and whitespace around tokens is
/// tolerated; anything else throws Parse with the offending line number.
Circuit from_qasm(std::string_view text);

}  // namespace qbot

#endif
