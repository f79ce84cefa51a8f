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

#include "qbot/error.h"

namespace qbot {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid_argument";
        case ErrorCode::Capacity:
            return "capacity";
        case ErrorCode::Structural:
            return "structural";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::Numerical:
            return "numerical";
        case ErrorCode::CorruptController:
            return "corrupt_controller";
        case ErrorCode::InvalidChoice:
            return "invalid_choice";
        case ErrorCode::State:
            return "state";
        case ErrorCode::Policy:
            return "policy";
        case ErrorCode::Replay:
            return "replay";
        case ErrorCode::Contract:
            return "contract";
        case ErrorCode::Io:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

}  // namespace qbot
