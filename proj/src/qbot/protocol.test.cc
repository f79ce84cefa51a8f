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

#include "qbot/protocol.h"

#include <gtest/gtest.h>

#include "json.hpp"
#include "qbot/test_util.test.h"

using namespace qbot;
using nlohmann::json;

namespace {

std::vector<json> send(ProtocolSession &s, const json &msg) {
    std::vector<json> out;
    for (const auto &line : s.handle(msg.dump())) {
        out.push_back(json::parse(line));
    }
    return out;
}

}  // namespace

TEST(protocol, idle_state_and_errors) {
    ProtocolSession s;
    auto idle = send(s, {{"type", "state"}});
    ASSERT_EQ(idle.size(), 1u);
    ASSERT_EQ(idle[0]["status"], "idle");

    auto out = s.handle("not json");
    ASSERT_EQ(json::parse(out.at(0))["code"], "bad_request");
    ASSERT_EQ(send(s, {{"type", "warp"}})[0]["code"], "bad_request");
    ASSERT_EQ(send(s, {{"type", "step"}})[0]["code"], "state");
    ASSERT_EQ(send(s, {{"type", "start"}})[0]["code"], "bad_request");
    ASSERT_EQ(send(s, {{"type", "start"}, {"map", "#.#"}})[0]["code"], "parse");
    ASSERT_EQ(send(s, {{"type", "start"}, {"map", "^"}, {"policy", "x"}})[0]["code"], "invalid_argument");
}

TEST(protocol, interactive_t_junction) {
    ProtocolSession s;
    auto started = send(s, {{"type", "start"}, {"map", read_test_file("maps/t_junction.txt")}});
    ASSERT_EQ(started.size(), 1u);
    ASSERT_EQ(started[0]["type"], "state");
    ASSERT_EQ(started[0]["status"], "running");
    ASSERT_EQ(started[0]["map"], read_test_file("maps/t_junction.txt"));

    auto r0 = send(s, {{"type", "step"}});
    ASSERT_EQ(r0[0]["type"], "record");
    ASSERT_EQ(r0[0]["action"], "Forward");

    auto ask = send(s, {{"type", "step"}});
    ASSERT_EQ(ask[0], json::parse(R"({"type":"ask","step":1,"clear":["F","B"]})"));
    ASSERT_EQ(send(s, {{"type", "step"}})[0]["code"], "state");
    ASSERT_EQ(send(s, {{"type", "answer"}, {"direction", "L"}})[0]["code"], "invalid_choice");
    ASSERT_EQ(send(s, {{"type", "answer"}, {"direction", "Z"}})[0]["code"], "bad_request");
    auto pending = send(s, {{"type", "state"}});
    ASSERT_EQ(pending[0]["status"], "awaiting_answer");
    ASSERT_EQ(pending[0]["pending"]["clear"], json::parse(R"(["F","B"])"));

    ASSERT_EQ(send(s, {{"type", "answer"}, {"direction", "F"}})[0]["ask_choice"], "F");
    auto ask2 = send(s, {{"type", "step"}});
    ASSERT_EQ(ask2[0]["clear"], json::parse(R"(["B","L","R"])"));
    auto done = send(s, {{"type", "answer"}, {"direction", "L"}});
    ASSERT_EQ(done.size(), 2u);
    ASSERT_EQ(done[0]["action"], "TurnLeft");
    ASSERT_EQ(done[0]["terminal"], "GOAL");
    ASSERT_EQ(done[1], json::parse(R"({"type":"terminal","status":"GOAL"})"));
    ASSERT_EQ(send(s, {{"type", "step"}})[0]["code"], "state");

    // The live episode's trace replays cleanly.
    auto doc = load_map(read_test_file("maps/t_junction.txt"));
    replay_trace(s.episode()->trace(), vehicle_controller(true), &doc.map);
    ASSERT_EQ(trace_to_jsonl(s.episode()->trace()), read_test_file("golden/t_junction.jsonl"));
}

TEST(protocol, start_terminal_immediately) {
    ProtocolSession s;
    auto out = send(s, {{"type", "start"}, {"map", "^"}, {"max_steps", 0}});
    ASSERT_EQ(out.size(), 3u);
    ASSERT_EQ(out[0]["status"], "terminated");
    ASSERT_EQ(out[1]["type"], "record");
    ASSERT_EQ(out[1]["action"], "Halt");
    ASSERT_EQ(out[2]["status"], "STEP_LIMIT");
}

TEST(protocol, non_interactive_policy_answers_itself) {
    ProtocolSession s;
    send(s, {{"type", "start"}, {"map", read_test_file("maps/t_junction.txt")}, {"policy", "script:FL"}});
    std::vector<json> records;
    for (int i = 0; i < 3; i++) {
        for (auto &m : send(s, {{"type", "step"}})) {
            records.push_back(m);
        }
    }
    ASSERT_EQ(records.size(), 4u);
    ASSERT_EQ(records[3]["status"], "GOAL");
}
