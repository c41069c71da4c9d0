// Copyright 2026 The sepball Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sepball {

// Values mirror sb_status in sepball.h; keep the two in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Parse = 2,
  Io = 3,
  NotHermitian = 4,
  TraceNotOne = 5,
  NotPsd = 6,
  DimensionMismatch = 7,
  InvalidSubset = 8,
  RankDeficient = 9,
  InvalidP = 10,
  FloorUnreachable = 11,
  SingularFactor = 12,
  NoFullRankComponent = 13,
  NotBipartite = 14,
  Internal = 15,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sepball
