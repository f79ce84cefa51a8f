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

#ifndef QBOT_GRIDWORLD_H
#define QBOT_GRIDWORLD_H

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbot/controller.h"

namespace qbot {

enum class Heading { N, E, S, W };

Heading rotate_ccw(Heading h);
Heading rotate_cw(Heading h);
char heading_char(Heading h);
std::optional<Heading> heading_from_char(char c);

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell &other) const = default;
};

/// x grows rightward, y grows downward.
struct Pose {
    int x = 0;
    int y = 0;
    Heading heading = Heading::N;

    Cell cell() const {
        return {x, y};
    }
    bool operator==(const Pose &other) const = default;
};

/// One cell along the heading.
Cell step_towards(Cell c, Heading h);

class GridMap {
   public:
    GridMap(int width, int height);

    int width() const {
        return width_;
    }
    int height() const {
        return height_;
    }
    const std::optional<Cell> &goal() const {
        return goal_;
    }

    bool in_bounds(Cell c) const;
    /// Out-of-bounds cells count as obstacles.
    bool blocked(Cell c) const;
    void set_obstacle(Cell c, bool obstacle);
    void set_goal(std::optional<Cell> goal);

   private:
    int width_;
    int height_;
    std::vector<bool> cells_;
    std::optional<Cell> goal_;
};

struct MapDocument {
    GridMap map;
    Pose start;
};

/// Parses an ASCII map: '#' obstacle, '.' free, 'G' goal, and exactly one of
/// '^' '>' 'v' '<' for the robot start. Rows must have equal length.
/// Errors carry the line and column.
MapDocument load_map(std::string_view text);

/// Re-serializes the map with the robot marker at `pose`. Every row ends in
/// a newline.
std::string render(const GridMap &map, const Pose &pose);

/// Sensor bits in the robot's body frame; 1 means in bounds and free.
SensorWord sense(const GridMap &map, const Pose &pose);

enum class Action { Forward, Backward, TurnLeft, TurnRight, LiftOff, Ask };

std::string_view action_name(Action a);
std::optional<Action> action_from_name(std::string_view name);

/// Maps a decoded controller outcome to the single action it commands.
/// Throws CorruptController for a motor combination with no action.
Action interpret(const ControlOutcome &outcome);

enum class Terminal { Airborne, Goal, StepLimit };

std::string_view terminal_name(Terminal t);
std::optional<Terminal> terminal_from_name(std::string_view name);

struct MoveResult {
    Pose pose;
    std::optional<Terminal> terminal;
};

/// Pose change of a ground move, ignoring the map.
///
/// Forward and Backward keep the heading. A turn rotates 90 degrees and then
/// advances one cell along the new heading.
Pose kinematics(const Pose &pose, Action a);

/// Executes a move on the map. LiftOff is terminal AIRBORNE and entering the
/// goal cell is terminal GOAL. A move into an occupied cell throws Contract.
MoveResult apply_action(const GridMap &map, const Pose &pose, Action a);

/// Body-frame direction chosen in answer to an ask.
enum class Direction { F, B, L, R };

char direction_char(Direction d);
std::optional<Direction> direction_from_char(char c);
bool is_clear(const SensorWord &s, Direction d);
/// Clear directions in F, B, L, R order.
std::vector<Direction> clear_directions(const SensorWord &s);

/// One-hot word with only `chosen` set. Throws InvalidChoice if that side is
/// blocked in `s`.
SensorWord resolve_ask(const SensorWord &s, Direction chosen);

}  // namespace qbot

#endif
