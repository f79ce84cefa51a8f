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

#ifndef QBOT_ERROR_H
#define QBOT_ERROR_H

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbot {

/// Failure categories shared by every module. The C API maps these one to one
/// onto its status codes, so the numbering is part of the ABI.
enum class ErrorCode {
    InvalidArgument = 1,
    Capacity = 2,
    Structural = 3,
    Parse = 4,
    Numerical = 5,
    CorruptController = 6,
    InvalidChoice = 7,
    State = 8,
    Policy = 9,
    Replay = 10,
    Contract = 11,
    Io = 12,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace qbot

#endif
