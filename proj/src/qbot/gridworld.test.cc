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

#include "qbot/gridworld.h"

#include <gtest/gtest.h>

#include <random>

#include "qbot/test_util.test.h"

using namespace qbot;

namespace {

void expect_parse_at(std::string_view text, std::string_view where) {
    try {
        load_map(text);
        ADD_FAILURE() << "accepted:\n" << text;
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
}

GridMap open_map(int w, int h) {
    return GridMap(w, h);
}

}  // namespace

TEST(gridworld, load_map_examples) {
    auto doc = load_map("...\n.^.\n...\n");
    ASSERT_EQ(doc.map.width(), 3);
    ASSERT_EQ(doc.map.height(), 3);
    ASSERT_EQ(doc.start, (Pose{1, 1, Heading::N}));
    ASSERT_FALSE(doc.map.blocked({1, 1}));

    auto east = load_map("#>#");
    ASSERT_EQ(east.start, (Pose{1, 0, Heading::E}));
    ASSERT_TRUE(east.map.blocked({0, 0}));

    auto goal = load_map("#v.G#\n");
    ASSERT_EQ(goal.map.goal(), (Cell{3, 0}));
    ASSERT_EQ(goal.start.heading, Heading::S);

    auto west = load_map("<.\r\n..\r\n\n\n");
    ASSERT_EQ(west.start, (Pose{0, 0, Heading::W}));
    ASSERT_EQ(west.map.height(), 2);
}

TEST(gridworld, load_map_errors) {
    expect_parse_at("#.#", "no robot");
    expect_parse_at("", "line 1, column 1");
    expect_parse_at("^..\n..\n", "line 2, column 3");
    expect_parse_at("^.x\n", "line 1, column 3");
    expect_parse_at("^.\n.>\n", "line 2, column 2");
    expect_parse_at("^G\nG.\n", "line 2, column 1");
}

TEST(gridworld, render_round_trip) {
    for (std::string text : {"...\n.^.\n...\n", "#####\n#G..#\n##.##\n##^##\n#####\n", "#<.G\n"}) {
        auto doc = load_map(text);
        ASSERT_EQ(render(doc.map, doc.start), text);
    }
    auto doc = load_map("#>#");
    ASSERT_EQ(render(doc.map, doc.start), "#>#\n");
}

TEST(gridworld, sense_examples) {
    auto doc = load_map("#.#\n#^#\n###\n");
    ASSERT_EQ(sense(doc.map, doc.start).to_string(), "1000");
    ASSERT_EQ(sense(doc.map, {1, 1, Heading::E}).to_string(), "0010");
    ASSERT_EQ(sense(doc.map, {1, 1, Heading::S}).to_string(), "0100");
    ASSERT_EQ(sense(doc.map, {1, 1, Heading::W}).to_string(), "0001");

    auto border = load_map(".>");
    ASSERT_FALSE(sense(border.map, border.start).front);
    ASSERT_TRUE(sense(border.map, border.start).back);
}

TEST(gridworld, heading_rotation) {
    ASSERT_EQ(rotate_ccw(Heading::N), Heading::W);
    ASSERT_EQ(rotate_cw(Heading::N), Heading::E);
    ASSERT_EQ(rotate_cw(rotate_ccw(Heading::S)), Heading::S);
    ASSERT_EQ(step_towards({2, 3}, Heading::N), (Cell{2, 2}));
    ASSERT_EQ(step_towards({2, 3}, Heading::S), (Cell{2, 4}));
    ASSERT_EQ(step_towards({2, 3}, Heading::E), (Cell{3, 3}));
    ASSERT_EQ(step_towards({2, 3}, Heading::W), (Cell{1, 3}));
}

TEST(gridworld, interpret_examples) {
    using M = MotorState;
    ASSERT_EQ(interpret({M::Forward, M::Forward, false, false}), Action::Forward);
    ASSERT_EQ(interpret({M::Backward, M::Backward, false, false}), Action::Backward);
    ASSERT_EQ(interpret({M::Stop, M::Forward, false, false}), Action::TurnLeft);
    ASSERT_EQ(interpret({M::Forward, M::Stop, false, false}), Action::TurnRight);
    ASSERT_EQ(interpret({M::Stop, M::Stop, true, false}), Action::LiftOff);
    ASSERT_EQ(interpret({M::Stop, M::Stop, false, true}), Action::Ask);

    for (ControlOutcome bad : {
             ControlOutcome{M::Stop, M::Stop, false, false},
             ControlOutcome{M::Forward, M::Backward, false, false},
             ControlOutcome{M::Stop, M::Backward, false, false},
             ControlOutcome{M::Stop, M::Stop, true, true},
             ControlOutcome{M::Forward, M::Forward, true, false},
         }) {
        expect_error(ErrorCode::CorruptController, [&] {
            interpret(bad);
        });
    }
}

TEST(gridworld, apply_action_examples) {
    auto map = open_map(5, 5);
    Pose p{2, 3, Heading::N};
    ASSERT_EQ(apply_action(map, p, Action::Forward).pose, (Pose{2, 2, Heading::N}));
    ASSERT_EQ(apply_action(map, p, Action::Backward).pose, (Pose{2, 4, Heading::N}));
    ASSERT_EQ(apply_action(map, p, Action::TurnLeft).pose, (Pose{1, 3, Heading::W}));
    ASSERT_EQ(apply_action(map, p, Action::TurnRight).pose, (Pose{3, 3, Heading::E}));
    auto up = apply_action(map, p, Action::LiftOff);
    ASSERT_EQ(up.terminal, Terminal::Airborne);
    ASSERT_EQ(up.pose, p);
    ASSERT_FALSE(apply_action(map, p, Action::Forward).terminal.has_value());

    map.set_goal(Cell{2, 2});
    ASSERT_EQ(apply_action(map, p, Action::Forward).terminal, Terminal::Goal);

    map.set_obstacle({1, 3}, true);
    expect_error(ErrorCode::Contract, [&] {
        apply_action(map, p, Action::TurnLeft);
    });
    expect_error(ErrorCode::Contract, [&] {
        apply_action(map, {0, 0, Heading::N}, Action::Forward);
    });
    expect_error(ErrorCode::Contract, [&] {
        apply_action(map, p, Action::Ask);
    });
}

TEST(gridworld, resolve_ask_examples) {
    ASSERT_EQ(resolve_ask(SensorWord::from_string("1010"), Direction::L).to_string(), "0010");
    ASSERT_EQ(resolve_ask(SensorWord::from_string("1111"), Direction::B).to_string(), "0100");
    expect_error(ErrorCode::InvalidChoice, [] {
        resolve_ask(SensorWord::from_string("1010"), Direction::R);
    });
    auto clear = clear_directions(SensorWord::from_string("1011"));
    ASSERT_EQ(clear, (std::vector<Direction>{Direction::F, Direction::L, Direction::R}));
}

TEST(gridworld, names) {
    for (auto a : {Action::Forward, Action::Backward, Action::TurnLeft, Action::TurnRight, Action::LiftOff, Action::Ask}) {
        ASSERT_EQ(action_from_name(action_name(a)), a);
    }
    for (auto t : {Terminal::Airborne, Terminal::Goal, Terminal::StepLimit}) {
        ASSERT_EQ(terminal_from_name(terminal_name(t)), t);
    }
    ASSERT_EQ(terminal_name(Terminal::StepLimit), "STEP_LIMIT");
    ASSERT_FALSE(action_from_name("Sideways").has_value());
    ASSERT_EQ(direction_from_char('L'), Direction::L);
    ASSERT_FALSE(direction_from_char('x').has_value());
}

TEST(gridworld_property, frame_coherence) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; trial++) {
        GridMap map(4, 4);
        for (int y = 0; y < 4; y++) {
            for (int x = 0; x < 4; x++) {
                map.set_obstacle({x, y}, rng() % 3 == 0);
            }
        }
        int x = static_cast<int>(rng() % 4), y = static_cast<int>(rng() % 4);
        map.set_obstacle({x, y}, false);
        for (auto h : {Heading::N, Heading::E, Heading::S, Heading::W}) {
            auto before = sense(map, {x, y, h});
            // Turning counterclockwise moves each body side one step along
            // front -> right -> back -> left.
            auto after = sense(map, {x, y, rotate_ccw(h)});
            ASSERT_EQ(after.right, before.front);
            ASSERT_EQ(after.back, before.right);
            ASSERT_EQ(after.left, before.back);
            ASSERT_EQ(after.front, before.left);
        }
    }
}

TEST(gridworld_property, truthful_moves_stay_free) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; trial++) {
        int w = 1 + static_cast<int>(rng() % 6), h = 1 + static_cast<int>(rng() % 6);
        GridMap map(w, h);
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                map.set_obstacle({x, y}, rng() % 3 == 0);
            }
        }
        Pose p{static_cast<int>(rng() % w), static_cast<int>(rng() % h), static_cast<Heading>(rng() % 4)};
        map.set_obstacle(p.cell(), false);
        auto s = sense(map, p);
        // Every clear direction maps to a legal ground move.
        for (auto d : clear_directions(s)) {
            Action a = d == Direction::F   ? Action::Forward
                       : d == Direction::B ? Action::Backward
                       : d == Direction::L ? Action::TurnLeft
                                           : Action::TurnRight;
            auto r = apply_action(map, p, a);
            ASSERT_TRUE(map.in_bounds(r.pose.cell()));
            ASSERT_FALSE(map.blocked(r.pose.cell()));
        }
    }
}
