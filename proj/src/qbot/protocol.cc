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

#include "json.hpp"
#include "qbot/error.h"

namespace qbot {

namespace {

using ojson = nlohmann::ordered_json;

std::string error_message(std::string_view code, const std::string &message) {
    ojson j;
    j["type"] = "error";
    j["code"] = code;
    j["message"] = message;
    return j.dump();
}

ojson ask_json(const AskRequest &ask) {
    ojson j;
    j["type"] = "ask";
    j["step"] = ask.step;
    j["clear"] = ojson::array();
    for (auto d : ask.clear) {
        j["clear"].push_back(std::string(1, direction_char(d)));
    }
    return j;
}

ojson pose_json(const Pose &p) {
    return {{"x", p.x}, {"y", p.y}, {"heading", std::string(1, heading_char(p.heading))}};
}

void append_record(std::vector<std::string> &out, const TraceRecord &rec) {
    out.push_back(record_message(rec));
    if (rec.terminal) {
        ojson t;
        t["type"] = "terminal";
        t["status"] = terminal_name(*rec.terminal);
        out.push_back(t.dump());
    }
}

void append_step_result(std::vector<std::string> &out, const StepResult &r) {
    if (const auto *rec = std::get_if<TraceRecord>(&r)) {
        append_record(out, *rec);
    } else {
        out.push_back(ask_message(std::get<AskRequest>(r)));
    }
}

}  // namespace

std::string record_message(const TraceRecord &rec) {
    ojson j;
    j["type"] = "record";
    auto body = ojson::parse(record_to_json(rec));
    for (auto it = body.begin(); it != body.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j.dump();
}

std::string ask_message(const AskRequest &ask) {
    return ask_json(ask).dump();
}

std::string ProtocolSession::state_message() const {
    ojson j;
    j["type"] = "state";
    if (!episode_) {
        j["status"] = "idle";
        return j.dump();
    }
    const auto &ep = *episode_;
    j["status"] = episode_status_name(ep.status());
    j["step"] = ep.trace().size();
    j["width"] = ep.map().width();
    j["height"] = ep.map().height();
    j["map"] = render(ep.map(), ep.pose());
    j["pose"] = pose_json(ep.pose());
    j["pending"] = ep.pending() ? ask_json(*ep.pending()) : ojson(nullptr);
    j["terminal"] = ep.terminal() ? ojson(std::string(terminal_name(*ep.terminal()))) : ojson(nullptr);
    j["last"] = ep.trace().empty() ? ojson(nullptr) : ojson::parse(record_to_json(ep.trace().back()));
    return j.dump();
}

std::vector<std::string> ProtocolSession::handle(std::string_view line) {
    std::vector<std::string> out;
    nlohmann::json msg;
    try {
        msg = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &) {
        out.push_back(error_message("bad_request", "message is not valid JSON"));
        return out;
    }
    if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
        out.push_back(error_message("bad_request", "message needs a string \"type\""));
        return out;
    }
    auto type = msg["type"].get<std::string>();

    try {
        if (type == "start") {
            if (!msg.contains("map") || !msg["map"].is_string()) {
                out.push_back(error_message("bad_request", "start needs a \"map\" string"));
                return out;
            }
            EpisodeConfig config;
            config.map_text = msg["map"].get<std::string>();
            if (msg.contains("max_steps")) {
                config.max_steps = msg["max_steps"].get<size_t>();
            }
            if (msg.contains("policy")) {
                config.policy = AskPolicy::parse(msg["policy"].get<std::string>());
            }
            if (msg.contains("seed")) {
                config.seed = msg["seed"].get<uint64_t>();
            }
            episode_ = std::make_unique<Episode>(std::move(config));
            out.push_back(state_message());
            if (episode_->terminal()) {
                append_record(out, episode_->trace().back());
            }
        } else if (type == "state") {
            out.push_back(state_message());
        } else if (type == "step") {
            if (!episode_) {
                throw Error(ErrorCode::State, "no episode started");
            }
            append_step_result(out, episode_->advance());
        } else if (type == "answer") {
            if (!episode_) {
                throw Error(ErrorCode::State, "no episode started");
            }
            auto d = msg.contains("direction") && msg["direction"].is_string() ? msg["direction"].get<std::string>()
                                                                                 : std::string();
            auto dir = d.size() == 1 ? direction_from_char(d[0]) : std::nullopt;
            if (!dir) {
                out.push_back(error_message("bad_request", "answer needs \"direction\" of F, B, L or R"));
                return out;
            }
            append_record(out, episode_->answer(*dir));
        } else {
            out.push_back(error_message("bad_request", "unknown message type '" + type + "'"));
        }
    } catch (const Error &e) {
        out.push_back(error_message(error_code_name(e.code()), e.what()));
    } catch (const nlohmann::json::exception &e) {
        out.push_back(error_message("bad_request", e.what()));
    }
    return out;
}

}  // namespace qbot
