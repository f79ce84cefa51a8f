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

#ifndef QBOT_SESSION_H
#define QBOT_SESSION_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbot/controller.h"
#include "qbot/gridworld.h"
#include "qbot/qsim.h"

namespace qbot {

constexpr size_t DEFAULT_MAX_STEPS = 1000;

/// Who answers ask requests.
struct AskPolicy {
    enum class Kind { Interactive, Scripted, FirstClear };

    Kind kind = Kind::Interactive;
    /// Directions consumed in order, e.g. "FLR". Only used when Scripted.
    std::string script;

    static AskPolicy interactive() {
        return {};
    }
    static AskPolicy first_clear() {
        return {Kind::FirstClear, ""};
    }
    static AskPolicy scripted(std::string directions);

    /// Accepts "interactive", "first-clear" and "script:FBL...".
    static AskPolicy parse(std::string_view text);
    std::string to_string() const;
};

struct EpisodeConfig {
    std::string map_text;
    size_t max_steps = DEFAULT_MAX_STEPS;
    AskPolicy policy;
    /// Seeds the per-step measurement of the controller register.
    uint64_t seed = 0;
};

/// One line of an episode trace. `pose` is the pose before the step.
///
/// After an answered ask, `sensors` is the word that was sensed and `output`
/// is the controller readout for the chosen one-hot word. An empty `action`
/// marks the halt record written when the step limit is reached; it is
/// serialized as "Halt".
struct TraceRecord {
    size_t step = 0;
    Pose pose;
    SensorWord sensors;
    std::string output;
    std::optional<Action> action;
    std::optional<Direction> ask_choice;
    std::optional<Terminal> terminal;

    bool operator==(const TraceRecord &other) const = default;
};

using EpisodeTrace = std::vector<TraceRecord>;

struct AskRequest {
    size_t step = 0;
    std::vector<Direction> clear;

    bool operator==(const AskRequest &other) const = default;
};

enum class EpisodeStatus { Running, AwaitingAnswer, Terminated };

std::string_view episode_status_name(EpisodeStatus s);

using StepResult = std::variant<TraceRecord, AskRequest>;

/// A single navigation run. The controller is synthesized and lowered once;
/// every decision re-prepares the register from the sensed word.
class Episode {
   public:
    explicit Episode(EpisodeConfig config);

    /// Senses and evaluates. Returns the executed record, or an AskRequest
    /// that blocks the episode until answer(). Throws State when blocked or
    /// terminated.
    StepResult step();

    /// Resolves the pending ask through the controller. Throws InvalidChoice
    /// for a blocked direction (the request stays pending) and State when
    /// nothing is pending.
    TraceRecord answer(Direction d);

    /// step(), answering asks from the policy unless it is interactive.
    StepResult advance();

    EpisodeStatus status() const;
    const std::optional<AskRequest> &pending() const {
        return pending_;
    }
    std::optional<Terminal> terminal() const;
    const Pose &pose() const {
        return pose_;
    }
    const GridMap &map() const {
        return map_;
    }
    const Circuit &controller() const {
        return controller_;
    }
    const EpisodeTrace &trace() const {
        return trace_;
    }
    const EpisodeConfig &config() const {
        return config_;
    }

   private:
    ControlOutcome decide(const SensorWord &word) const;
    TraceRecord execute(const SensorWord &sensed, const ControlOutcome &outcome, std::optional<Direction> choice);
    TraceRecord halt();
    Direction policy_choice(const AskRequest &request);

    EpisodeConfig config_;
    GridMap map_;
    Pose pose_;
    Circuit controller_;
    EpisodeTrace trace_;
    std::optional<AskRequest> pending_;
    SensorWord pending_word_;
    size_t script_pos_ = 0;
};

/// Runs a non-interactive episode until it terminates.
EpisodeTrace run_to_completion(const EpisodeConfig &config);

/// JSON object for one record, fields in schema order, no trailing newline.
std::string record_to_json(const TraceRecord &record);
std::string trace_to_jsonl(const EpisodeTrace &trace);

/// Parses one JSONL trace. Blank lines are skipped. Throws Parse for
/// malformed JSON and Replay for schema violations, with the line number.
EpisodeTrace parse_trace(std::string_view jsonl);

struct ReplayResult {
    /// Pose before each record plus the pose after the final move.
    std::vector<Pose> poses;
};

/// Re-validates a trace against a controller. Each output string must be what
/// the controller produces for the record's (resolved) sensor word, each
/// action must follow from it and consecutive poses must chain. With a map,
/// sensors and terminal states are checked against the world as well.
/// Throws Replay on the first mismatch.
ReplayResult replay_trace(const EpisodeTrace &trace, const Circuit &controller, const GridMap *map = nullptr);

}  // namespace qbot

#endif
