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

#include "sepball/error.hpp"

namespace sepball {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPsd: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::FloorUnreachable: return "FloorUnreachable";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::NoFullRankComponent: return "NoFullRankComponent";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace sepball
