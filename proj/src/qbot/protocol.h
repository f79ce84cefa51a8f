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

#ifndef QBOT_PROTOCOL_H
#define QBOT_PROTOCOL_H

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qbot/session.h"

namespace qbot {

/// {"type":"record", ...trace record fields}
std::string record_message(const TraceRecord &rec);
/// {"type":"ask","step":N,"clear":[...]}
std::string ask_message(const AskRequest &ask);

/// Server side of the newline-delimited JSON protocol for one connection.
///
/// Client messages:
///
///     {"type":"start","map":"...","max_steps":N,"policy":"interactive","seed":N}
///     {"type":"step"}
///     {"type":"answer","direction":"L"}
///     {"type":"state"}
///
/// Server messages: "record" (a trace record plus "type"), "ask"
/// ({"type":"ask","step":N,"clear":["F","L"]}), "terminal"
/// ({"type":"terminal","status":"AIRBORNE"}), "state" snapshots and
/// "error" ({"type":"error","code":"...","message":"..."}).
/// Only start's "map" is required; the rest default to 1000 steps, an
/// interactive policy and seed 0.
class ProtocolSession {
   public:
    /// Handles one client line, returning the reply lines without newlines.
    std::vector<std::string> handle(std::string_view line);

    const Episode *episode() const {
        return episode_.get();
    }

   private:
    std::string state_message() const;

    std::unique_ptr<Episode> episode_;
};

}  // namespace qbot

#endif
