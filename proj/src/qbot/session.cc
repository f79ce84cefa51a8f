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

#include "qbot/session.h"

#include <set>

#include "json.hpp"
#include "qbot/error.h"

namespace qbot {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

MapDocument parse_config_map(const EpisodeConfig &config) {
    return load_map(config.map_text);
}

}  // namespace

AskPolicy AskPolicy::scripted(std::string directions) {
    for (char c : directions) {
        if (!direction_from_char(c)) {
            throw Error(ErrorCode::InvalidArgument, std::string("script contains unknown direction '") + c + "'");
        }
    }
    return {Kind::Scripted, std::move(directions)};
}

AskPolicy AskPolicy::parse(std::string_view text) {
    if (text == "interactive") {
        return interactive();
    }
    if (text == "first-clear") {
        return first_clear();
    }
    if (text.starts_with("script:")) {
        return scripted(std::string(text.substr(7)));
    }
    throw Error(
        ErrorCode::InvalidArgument,
        "unknown ask policy '" + std::string(text) + "' (expected interactive, first-clear or script:DIRS)");
}

std::string AskPolicy::to_string() const {
    switch (kind) {
        case Kind::Interactive:
            return "interactive";
        case Kind::FirstClear:
            return "first-clear";
        case Kind::Scripted:
            return "script:" + script;
    }
    return "?";
}

std::string_view episode_status_name(EpisodeStatus s) {
    switch (s) {
        case EpisodeStatus::Running:
            return "running";
        case EpisodeStatus::AwaitingAnswer:
            return "awaiting_answer";
        case EpisodeStatus::Terminated:
            return "terminated";
    }
    return "?";
}

Episode::Episode(EpisodeConfig config)
    : config_(std::move(config)),
      map_(1, 1),
      controller_(vehicle_controller(/*lowered=*/true)) {
    auto doc = parse_config_map(config_);
    map_ = std::move(doc.map);
    pose_ = doc.start;
    if (config_.max_steps == 0) {
        halt();
    }
}

EpisodeStatus Episode::status() const {
    if (terminal()) {
        return EpisodeStatus::Terminated;
    }
    return pending_ ? EpisodeStatus::AwaitingAnswer : EpisodeStatus::Running;
}

std::optional<Terminal> Episode::terminal() const {
    if (trace_.empty()) {
        return std::nullopt;
    }
    return trace_.back().terminal;
}

ControlOutcome Episode::decide(const SensorWord &word) const {
    return evaluate_sampled(controller_, word, splitmix64(config_.seed ^ splitmix64(trace_.size())));
}

TraceRecord Episode::execute(const SensorWord &sensed, const ControlOutcome &outcome, std::optional<Direction> choice) {
    Action action = interpret(outcome);
    auto moved = apply_action(map_, pose_, action);
    TraceRecord rec;
    rec.step = trace_.size();
    rec.pose = pose_;
    rec.sensors = sensed;
    rec.output = format_table_iv(outcome);
    rec.action = action;
    rec.ask_choice = choice;
    rec.terminal = moved.terminal;
    pose_ = moved.pose;
    trace_.push_back(rec);
    return rec;
}

TraceRecord Episode::halt() {
    SensorWord sensed = sense(map_, pose_);
    TraceRecord rec;
    rec.step = trace_.size();
    rec.pose = pose_;
    rec.sensors = sensed;
    rec.output = format_table_iv(decide(sensed));
    rec.terminal = Terminal::StepLimit;
    trace_.push_back(rec);
    return rec;
}

StepResult Episode::step() {
    if (status() == EpisodeStatus::Terminated) {
        throw Error(ErrorCode::State, "episode has already terminated");
    }
    if (pending_) {
        throw Error(ErrorCode::State, "episode is waiting for an answer to step " + std::to_string(pending_->step));
    }
    if (trace_.size() >= config_.max_steps) {
        return halt();
    }

    SensorWord sensed = sense(map_, pose_);
    ControlOutcome outcome = decide(sensed);
    if (interpret(outcome) == Action::Ask) {
        pending_ = AskRequest{trace_.size(), clear_directions(sensed)};
        pending_word_ = sensed;
        return *pending_;
    }
    return execute(sensed, outcome, std::nullopt);
}

TraceRecord Episode::answer(Direction d) {
    if (!pending_) {
        throw Error(ErrorCode::State, "no ask is pending");
    }
    SensorWord one_hot = resolve_ask(pending_word_, d);
    ControlOutcome outcome = decide(one_hot);
    Action action = interpret(outcome);
    if (action == Action::Ask || action == Action::LiftOff) {
        throw Error(ErrorCode::CorruptController, "controller did not resolve a one-hot word to a move");
    }
    pending_.reset();
    return execute(pending_word_, outcome, d);
}

Direction Episode::policy_choice(const AskRequest &request) {
    switch (config_.policy.kind) {
        case AskPolicy::Kind::FirstClear:
            return request.clear.front();
        case AskPolicy::Kind::Scripted: {
            if (script_pos_ >= config_.policy.script.size()) {
                throw Error(
                    ErrorCode::Policy, "scripted answers exhausted at step " + std::to_string(request.step));
            }
            Direction d = *direction_from_char(config_.policy.script[script_pos_++]);
            if (!is_clear(pending_word_, d)) {
                throw Error(
                    ErrorCode::Policy, std::string("scripted answer ") + direction_char(d) + " at step " +
                                           std::to_string(request.step) + " is blocked");
            }
            return d;
        }
        case AskPolicy::Kind::Interactive:
            break;
    }
    throw Error(ErrorCode::Policy, "interactive episodes need an answer from the user");
}

StepResult Episode::advance() {
    StepResult r = step();
    if (auto *ask = std::get_if<AskRequest>(&r); ask && config_.policy.kind != AskPolicy::Kind::Interactive) {
        return answer(policy_choice(*ask));
    }
    return r;
}

EpisodeTrace run_to_completion(const EpisodeConfig &config) {
    if (config.policy.kind == AskPolicy::Kind::Interactive) {
        throw Error(ErrorCode::InvalidArgument, "headless runs need a scripted or first-clear ask policy");
    }
    Episode ep(config);
    while (ep.status() != EpisodeStatus::Terminated) {
        ep.advance();
    }
    return ep.trace();
}

std::string record_to_json(const TraceRecord &r) {
    nlohmann::ordered_json j;
    j["step"] = r.step;
    j["pose"] = {{"x", r.pose.x}, {"y", r.pose.y}, {"heading", std::string(1, heading_char(r.pose.heading))}};
    j["sensors"] = r.sensors.to_string();
    j["output"] = r.output;
    j["action"] = r.action ? std::string(action_name(*r.action)) : std::string("Halt");
    j["ask_choice"] = r.ask_choice ? nlohmann::ordered_json(std::string(1, direction_char(*r.ask_choice))) : nullptr;
    j["terminal"] = r.terminal ? nlohmann::ordered_json(std::string(terminal_name(*r.terminal))) : nullptr;
    return j.dump();
}

std::string trace_to_jsonl(const EpisodeTrace &trace) {
    std::string out;
    for (const auto &r : trace) {
        out += record_to_json(r);
        out += '\n';
    }
    return out;
}

namespace {

TraceRecord record_from_json(const nlohmann::json &j, size_t line) {
    auto fail = [&](const std::string &message) -> void {
        throw Error(ErrorCode::Replay, "line " + std::to_string(line) + ": " + message);
    };
    auto require_keys = [&](const nlohmann::json &obj, const std::set<std::string> &keys, const char *what) {
        if (!obj.is_object()) {
            fail(std::string(what) + " must be an object");
        }
        std::set<std::string> present;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            present.insert(it.key());
        }
        if (present != keys) {
            fail(std::string(what) + " has unexpected or missing fields");
        }
    };
    auto bits = [&](const nlohmann::json &v, size_t width, const char *what) {
        if (!v.is_string()) {
            fail(std::string(what) + " must be a string");
        }
        auto s = v.get<std::string>();
        if (s.size() != width || s.find_first_not_of("01") != std::string::npos) {
            fail(std::string(what) + " must be " + std::to_string(width) + " bits");
        }
        return s;
    };

    require_keys(j, {"step", "pose", "sensors", "output", "action", "ask_choice", "terminal"}, "record");
    TraceRecord r;
    if (!j["step"].is_number_unsigned()) {
        fail("step must be a non-negative integer");
    }
    r.step = j["step"].get<size_t>();

    const auto &pose = j["pose"];
    require_keys(pose, {"x", "y", "heading"}, "pose");
    if (!pose["x"].is_number_integer() || !pose["y"].is_number_integer() || !pose["heading"].is_string()) {
        fail("pose fields have the wrong type");
    }
    r.pose.x = pose["x"].get<int>();
    r.pose.y = pose["y"].get<int>();
    auto heading = pose["heading"].get<std::string>();
    auto h = heading.size() == 1 ? heading_from_char(heading[0]) : std::nullopt;
    if (!h) {
        fail("unknown heading '" + heading + "'");
    }
    r.pose.heading = *h;

    r.sensors = SensorWord::from_string(bits(j["sensors"], 4, "sensors"));
    r.output = bits(j["output"], 6, "output");

    if (!j["action"].is_string()) {
        fail("action must be a string");
    }
    auto action = j["action"].get<std::string>();
    if (action != "Halt") {
        r.action = action_from_name(action);
        if (!r.action) {
            fail("unknown action '" + action + "'");
        }
    }

    if (!j["ask_choice"].is_null()) {
        auto choice = j["ask_choice"].is_string() ? j["ask_choice"].get<std::string>() : std::string();
        auto d = choice.size() == 1 ? direction_from_char(choice[0]) : std::nullopt;
        if (!d) {
            fail("ask_choice must be null or one of F, B, L, R");
        }
        r.ask_choice = d;
    }
    if (!j["terminal"].is_null()) {
        auto t = j["terminal"].is_string() ? terminal_from_name(j["terminal"].get<std::string>()) : std::nullopt;
        if (!t) {
            fail("terminal must be null, AIRBORNE, GOAL or STEP_LIMIT");
        }
        r.terminal = t;
    }
    return r;
}

}  // namespace

EpisodeTrace parse_trace(std::string_view jsonl) {
    EpisodeTrace trace;
    size_t line_no = 0;
    while (!jsonl.empty()) {
        auto eol = jsonl.find('\n');
        auto line = jsonl.substr(0, eol);
        jsonl.remove_prefix(eol == std::string_view::npos ? jsonl.size() : eol + 1);
        line_no++;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
            continue;
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": malformed JSON");
        }
        trace.push_back(record_from_json(j, line_no));
    }
    return trace;
}

ReplayResult replay_trace(const EpisodeTrace &trace, const Circuit &controller, const GridMap *map) {
    ReplayResult result;
    auto fail = [](size_t step, const std::string &message) {
        throw Error(ErrorCode::Replay, "step " + std::to_string(step) + ": " + message);
    };

    std::optional<Pose> expected_pose;
    for (size_t i = 0; i < trace.size(); i++) {
        const auto &rec = trace[i];
        if (rec.step != i) {
            fail(i, "step index " + std::to_string(rec.step) + " out of sequence");
        }
        if (rec.terminal && i + 1 != trace.size()) {
            fail(i, "terminal record is not the last record");
        }
        if (expected_pose && rec.pose != *expected_pose) {
            fail(i, "pose does not follow from the previous move");
        }
        if (map) {
            if (map->blocked(rec.pose.cell())) {
                fail(i, "robot is on an obstacle");
            }
            if (sense(*map, rec.pose) != rec.sensors) {
                fail(i, "sensors do not match the map");
            }
        }
        result.poses.push_back(rec.pose);

        SensorWord word = rec.sensors;
        if (rec.ask_choice) {
            if (rec.sensors.popcount() < 2) {
                fail(i, "ask_choice recorded without a multi-clear sensing");
            }
            if (!is_clear(rec.sensors, *rec.ask_choice)) {
                fail(i, "ask_choice points at a blocked side");
            }
            word = resolve_ask(rec.sensors, *rec.ask_choice);
        }

        ControlOutcome outcome;
        try {
            outcome = evaluate(controller, word);
        } catch (const Error &e) {
            fail(i, std::string("controller failed: ") + e.what());
        }
        auto expected_output = format_table_iv(outcome);
        if (rec.output != expected_output) {
            fail(i, "output " + rec.output + " does not match the controller (" + expected_output + ")");
        }

        if (!rec.action) {
            if (rec.terminal != Terminal::StepLimit || rec.ask_choice) {
                fail(i, "halt record must carry STEP_LIMIT and no ask_choice");
            }
            continue;
        }
        if (rec.terminal == Terminal::StepLimit) {
            fail(i, "STEP_LIMIT must be recorded on a halt record");
        }

        Action expected_action = interpret(outcome);
        if (expected_action == Action::Ask) {
            fail(i, "ask was not answered");
        }
        if (*rec.action != expected_action) {
            fail(i, "action " + std::string(action_name(*rec.action)) + " does not follow from output");
        }
        if (expected_action == Action::LiftOff) {
            if (rec.terminal != Terminal::Airborne) {
                fail(i, "LiftOff must end the episode AIRBORNE");
            }
            continue;
        }
        if (rec.terminal == Terminal::Airborne) {
            fail(i, "AIRBORNE without LiftOff");
        }

        Pose next = kinematics(rec.pose, expected_action);
        if (map) {
            MoveResult moved;
            try {
                moved = apply_action(*map, rec.pose, expected_action);
            } catch (const Error &e) {
                fail(i, e.what());
            }
            if (moved.terminal != rec.terminal) {
                fail(i, "terminal status does not match the map");
            }
        }
        expected_pose = next;
        if (rec.terminal || i + 1 == trace.size()) {
            result.poses.push_back(next);
        }
    }
    return result;
}

}  // namespace qbot
