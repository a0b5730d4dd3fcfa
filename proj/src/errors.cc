// Copyright 2026 The mg-golf Authors.
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

#include "mggolf/errors.h"

namespace mggolf {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBadStep: return "BadStep";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kEmptyConfidenceSet: return "EmptyConfidenceSet";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptySurvivorSet: return "EmptySurvivorSet";
    case ErrorCode::kExhausted: return "Exhausted";
    case ErrorCode::kInconclusive: return "Inconclusive";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

MgError::MgError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw MgError(code, message);
}

}  // namespace mggolf
