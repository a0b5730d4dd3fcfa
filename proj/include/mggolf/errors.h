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

#ifndef MGGOLF_ERRORS_H_
#define MGGOLF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mggolf {

enum class ErrorCode {
  kNonFinite,
  kToleranceNotMet,
  kDimensionMismatch,
  kBadStep,
  kTooLarge,
  kEmptyClass,
  kEmptyConfidenceSet,
  kEmptyDataset,
  kEmptySurvivorSet,
  kExhausted,
  kInconclusive,
  kInvalidArgument,
  kConfig,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; the code
// identifies the failure class so callers (the CLI, the batch harness) can
// map it to exit codes or per-seed error records.
class MgError : public std::runtime_error {
 public:
  MgError(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace mggolf

#endif  // MGGOLF_ERRORS_H_
