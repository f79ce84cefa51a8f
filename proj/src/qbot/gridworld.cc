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

#include "qbot/error.h"

namespace qbot {

Heading rotate_ccw(Heading h) {
    switch (h) {
        case Heading::N:
            return Heading::W;
        case Heading::W:
            return Heading::S;
        case Heading::S:
            return Heading::E;
        case Heading::E:
            return Heading::N;
    }
    return h;
}

Heading rotate_cw(Heading h) {
    return rotate_ccw(rotate_ccw(rotate_ccw(h)));
}

char heading_char(Heading h) {
    switch (h) {
        case Heading::N:
            return 'N';
        case Heading::E:
            return 'E';
        case Heading::S:
            return 'S';
        case Heading::W:
            return 'W';
    }
    return '?';
}

std::optional<Heading> heading_from_char(char c) {
    switch (c) {
        case 'N':
            return Heading::N;
        case 'E':
            return Heading::E;
        case 'S':
            return Heading::S;
        case 'W':
            return Heading::W;
        default:
            return std::nullopt;
    }
}

Cell step_towards(Cell c, Heading h) {
    switch (h) {
        case Heading::N:
            return {c.x, c.y - 1};
        case Heading::E:
            return {c.x + 1, c.y};
        case Heading::S:
            return {c.x, c.y + 1};
        case Heading::W:
            return {c.x - 1, c.y};
    }
    return c;
}

GridMap::GridMap(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0) {
        throw Error(ErrorCode::InvalidArgument, "map dimensions must be positive");
    }
    cells_.assign(static_cast<size_t>(width) * static_cast<size_t>(height), false);
}

bool GridMap::in_bounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
}

bool GridMap::blocked(Cell c) const {
    return !in_bounds(c) || cells_[static_cast<size_t>(c.y) * width_ + c.x];
}

void GridMap::set_obstacle(Cell c, bool obstacle) {
    if (!in_bounds(c)) {
        throw Error(ErrorCode::InvalidArgument, "cell outside the map");
    }
    cells_[static_cast<size_t>(c.y) * width_ + c.x] = obstacle;
}

void GridMap::set_goal(std::optional<Cell> goal) {
    if (goal && blocked(*goal)) {
        throw Error(ErrorCode::InvalidArgument, "goal must be a free in-bounds cell");
    }
    goal_ = goal;
}

MapDocument load_map(std::string_view text) {
    std::vector<std::string_view> rows;
    while (!text.empty()) {
        auto eol = text.find('\n');
        auto row = text.substr(0, eol);
        if (!row.empty() && row.back() == '\r') {
            row.remove_suffix(1);
        }
        rows.push_back(row);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    }
    while (!rows.empty() && rows.back().empty()) {
        rows.pop_back();
    }
    if (rows.empty() || rows[0].empty()) {
        throw Error(ErrorCode::Parse, "line 1, column 1: map is empty");
    }

    auto fail = [](size_t line, size_t col, const std::string &message) {
        throw Error(
            ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + message);
    };

    int width = static_cast<int>(rows[0].size());
    int height = static_cast<int>(rows.size());
    GridMap map(width, height);
    std::optional<Pose> start;
    std::optional<Cell> goal;

    for (size_t y = 0; y < rows.size(); y++) {
        if (static_cast<int>(rows[y].size()) != width) {
            fail(y + 1, std::min(rows[y].size(), static_cast<size_t>(width)) + 1, "ragged row");
        }
        for (size_t x = 0; x < rows[y].size(); x++) {
            char ch = rows[y][x];
            Cell cell{static_cast<int>(x), static_cast<int>(y)};
            std::optional<Heading> robot;
            switch (ch) {
                case '#':
                    map.set_obstacle(cell, true);
                    break;
                case '.':
                    break;
                case 'G':
                    if (goal) {
                        fail(y + 1, x + 1, "more than one goal");
                    }
                    goal = cell;
                    break;
                case '^':
                    robot = Heading::N;
                    break;
                case '>':
                    robot = Heading::E;
                    break;
                case 'v':
                    robot = Heading::S;
                    break;
                case '<':
                    robot = Heading::W;
                    break;
                default:
                    fail(y + 1, x + 1, std::string("unknown character '") + ch + "'");
            }
            if (robot) {
                if (start) {
                    fail(y + 1, x + 1, "more than one robot marker");
                }
                start = Pose{cell.x, cell.y, *robot};
            }
        }
    }
    if (!start) {
        throw Error(ErrorCode::Parse, "line 1, column 1: map has no robot marker");
    }
    map.set_goal(goal);
    return MapDocument{std::move(map), *start};
}

std::string render(const GridMap &map, const Pose &pose) {
    std::string out;
    out.reserve(static_cast<size_t>(map.width() + 1) * map.height());
    for (int y = 0; y < map.height(); y++) {
        for (int x = 0; x < map.width(); x++) {
            Cell c{x, y};
            if (pose.cell() == c) {
                switch (pose.heading) {
                    case Heading::N:
                        out.push_back('^');
                        break;
                    case Heading::E:
                        out.push_back('>');
                        break;
                    case Heading::S:
                        out.push_back('v');
                        break;
                    case Heading::W:
                        out.push_back('<');
                        break;
                }
            } else if (map.blocked(c)) {
                out.push_back('#');
            } else if (map.goal() == c) {
                out.push_back('G');
            } else {
                out.push_back('.');
            }
        }
        out.push_back('\n');
    }
    return out;
}

SensorWord sense(const GridMap &map, const Pose &pose) {
    Cell here = pose.cell();
    auto clear = [&](Heading h) {
        return !map.blocked(step_towards(here, h));
    };
    SensorWord s;
    s.front = clear(pose.heading);
    s.back = clear(rotate_cw(rotate_cw(pose.heading)));
    s.left = clear(rotate_ccw(pose.heading));
    s.right = clear(rotate_cw(pose.heading));
    return s;
}

std::string_view action_name(Action a) {
    switch (a) {
        case Action::Forward:
            return "Forward";
        case Action::Backward:
            return "Backward";
        case Action::TurnLeft:
            return "TurnLeft";
        case Action::TurnRight:
            return "TurnRight";
        case Action::LiftOff:
            return "LiftOff";
        case Action::Ask:
            return "Ask";
    }
    return "?";
}

std::optional<Action> action_from_name(std::string_view name) {
    for (auto a : {Action::Forward, Action::Backward, Action::TurnLeft, Action::TurnRight, Action::LiftOff,
                   Action::Ask}) {
        if (action_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

Action interpret(const ControlOutcome &o) {
    using M = MotorState;
    bool moving = o.ml != M::Stop || o.mr != M::Stop;
    if (int(o.mu) + int(o.ask) + int(moving) > 1) {
        throw Error(ErrorCode::CorruptController, "controller commanded more than one action: " + format_table_iv(o));
    }
    if (o.mu) {
        return Action::LiftOff;
    }
    if (o.ask) {
        return Action::Ask;
    }
    if (o.ml == M::Forward && o.mr == M::Forward) {
        return Action::Forward;
    }
    if (o.ml == M::Backward && o.mr == M::Backward) {
        return Action::Backward;
    }
    if (o.ml == M::Stop && o.mr == M::Forward) {
        return Action::TurnLeft;
    }
    if (o.ml == M::Forward && o.mr == M::Stop) {
        return Action::TurnRight;
    }
    throw Error(ErrorCode::CorruptController, "motor combination has no action: " + format_table_iv(o));
}

std::string_view terminal_name(Terminal t) {
    switch (t) {
        case Terminal::Airborne:
            return "AIRBORNE";
        case Terminal::Goal:
            return "GOAL";
        case Terminal::StepLimit:
            return "STEP_LIMIT";
    }
    return "?";
}

std::optional<Terminal> terminal_from_name(std::string_view name) {
    for (auto t : {Terminal::Airborne, Terminal::Goal, Terminal::StepLimit}) {
        if (terminal_name(t) == name) {
            return t;
        }
    }
    return std::nullopt;
}

Pose kinematics(const Pose &pose, Action a) {
    Pose next = pose;
    switch (a) {
        case Action::Forward: {
            Cell c = step_towards(pose.cell(), pose.heading);
            next.x = c.x;
            next.y = c.y;
            break;
        }
        case Action::Backward: {
            Cell c = step_towards(pose.cell(), rotate_cw(rotate_cw(pose.heading)));
            next.x = c.x;
            next.y = c.y;
            break;
        }
        case Action::TurnLeft:
        case Action::TurnRight: {
            next.heading = a == Action::TurnLeft ? rotate_ccw(pose.heading) : rotate_cw(pose.heading);
            Cell c = step_towards(pose.cell(), next.heading);
            next.x = c.x;
            next.y = c.y;
            break;
        }
        case Action::LiftOff:
            break;
        case Action::Ask:
            throw Error(ErrorCode::Contract, "an ask must be resolved before moving");
    }
    return next;
}

MoveResult apply_action(const GridMap &map, const Pose &pose, Action a) {
    if (a == Action::LiftOff) {
        return MoveResult{pose, Terminal::Airborne};
    }
    Pose next = kinematics(pose, a);
    if (map.blocked(next.cell())) {
        throw Error(
            ErrorCode::Contract, std::string(action_name(a)) + " from (" + std::to_string(pose.x) + "," +
                                     std::to_string(pose.y) + ") runs into an obstacle");
    }
    MoveResult r{next, std::nullopt};
    if (map.goal() == next.cell()) {
        r.terminal = Terminal::Goal;
    }
    return r;
}

char direction_char(Direction d) {
    switch (d) {
        case Direction::F:
            return 'F';
        case Direction::B:
            return 'B';
        case Direction::L:
            return 'L';
        case Direction::R:
            return 'R';
    }
    return '?';
}

std::optional<Direction> direction_from_char(char c) {
    switch (c) {
        case 'F':
            return Direction::F;
        case 'B':
            return Direction::B;
        case 'L':
            return Direction::L;
        case 'R':
            return Direction::R;
        default:
            return std::nullopt;
    }
}

bool is_clear(const SensorWord &s, Direction d) {
    switch (d) {
        case Direction::F:
            return s.front;
        case Direction::B:
            return s.back;
        case Direction::L:
            return s.left;
        case Direction::R:
            return s.right;
    }
    return false;
}

std::vector<Direction> clear_directions(const SensorWord &s) {
    std::vector<Direction> out;
    for (auto d : {Direction::F, Direction::B, Direction::L, Direction::R}) {
        if (is_clear(s, d)) {
            out.push_back(d);
        }
    }
    return out;
}

SensorWord resolve_ask(const SensorWord &s, Direction chosen) {
    if (!is_clear(s, chosen)) {
        throw Error(
            ErrorCode::InvalidChoice,
            std::string("direction ") + direction_char(chosen) + " is blocked (sensors " + s.to_string() + ")");
    }
    SensorWord one_hot;
    switch (chosen) {
        case Direction::F:
            one_hot.front = true;
            break;
        case Direction::B:
            one_hot.back = true;
            break;
        case Direction::L:
            one_hot.left = true;
            break;
        case Direction::R:
            one_hot.right = true;
            break;
    }
    return one_hot;
}

}  // namespace qbot
