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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "qbot/error.h"

namespace qbot {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(size_t line, const std::string &message) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + message);
}

/// Parses "q[123]" into 123.
uint32_t parse_operand(std::string_view token, size_t line) {
    token = trim(token);
    if (token.size() < 4 || token.substr(0, 2) != "q[" || token.back() != ']') {
        fail(line, "expected an operand of the form q[i], got '" + std::string(token) + "'");
    }
    auto digits = token.substr(2, token.size() - 3);
    uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
        fail(line, "bad qubit index '" + std::string(digits) + "'");
    }
    return value;
}

std::vector<uint32_t> parse_operands(std::string_view rest, size_t line) {
    std::vector<uint32_t> result;
    while (true) {
        auto comma = rest.find(',');
        result.push_back(parse_operand(rest.substr(0, comma), line));
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return result;
}

}  // namespace

std::string to_qasm(const Circuit &circuit) {
    std::string out = "OPENQASM 2.0;\nqreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
    for (const auto &g : circuit.gates()) {
        switch (g.num_controls()) {
            case 0:
                out += "x ";
                break;
            case 1:
                out += "cx ";
                break;
            case 2:
                out += "ccx ";
                break;
            default:
                throw Error(
                    ErrorCode::Structural,
                    "cannot export a gate with " + std::to_string(g.num_controls()) + " controls; lower the circuit");
        }
        for (auto c : g.controls) {
            out += "q[" + std::to_string(c.index) + "],";
        }
        out += "q[" + std::to_string(g.target.index) + "];\n";
    }
    return out;
}

Circuit from_qasm(std::string_view text) {
    std::optional<Circuit> circuit;
    bool saw_header = false;
    size_t line_no = 0;

    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
        line_no++;
        if (line.empty()) {
            continue;
        }
        if (!saw_header) {
            if (line != "OPENQASM 2.0;") {
                fail(line_no, "expected 'OPENQASM 2.0;' header");
            }
            saw_header = true;
            continue;
        }
        if (line.back() != ';') {
            fail(line_no, "statement must end with ';'");
        }
        line.remove_suffix(1);
        auto space = line.find_first_of(" \t");
        if (space == std::string_view::npos) {
            fail(line_no, "unsupported statement '" + std::string(line) + "'");
        }
        auto keyword = line.substr(0, space);
        auto rest = trim(line.substr(space + 1));

        if (keyword == "qreg") {
            if (circuit) {
                fail(line_no, "only one qreg declaration is allowed");
            }
            uint32_t n = parse_operand(rest, line_no);
            if (n == 0) {
                fail(line_no, "register must have at least one qubit");
            }
            circuit.emplace(n);
            continue;
        }

        size_t arity;
        if (keyword == "x") {
            arity = 1;
        } else if (keyword == "cx") {
            arity = 2;
        } else if (keyword == "ccx") {
            arity = 3;
        } else {
            fail(line_no, "unsupported statement '" + std::string(keyword) + "'");
        }
        if (!circuit) {
            fail(line_no, "gate before qreg declaration");
        }
        auto ops = parse_operands(rest, line_no);
        if (ops.size() != arity) {
            fail(line_no, std::string(keyword) + " takes " + std::to_string(arity) + " operands");
        }
        Gate g;
        g.target = QubitId(ops.back());
        for (size_t i = 0; i + 1 < ops.size(); i++) {
            g.controls.emplace_back(ops[i]);
        }
        try {
            circuit->append(std::move(g));
        } catch (const Error &e) {
            fail(line_no, e.what());
        }
    }

    if (!saw_header) {
        fail(std::max<size_t>(line_no, 1), "missing 'OPENQASM 2.0;' header");
    }
    if (!circuit) {
        fail(std::max<size_t>(line_no, 1), "missing qreg declaration");
    }
    return std::move(*circuit);
}

}  // namespace qbot
