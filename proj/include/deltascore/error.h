// Copyright 2026 The DeltaScore Toolkit Authors
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

#ifndef DELTASCORE_ERROR_H_
#define DELTASCORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace deltascore {

// Failure categories surfaced by the toolkit. A no-op perturbation is not an
// error; it is reported through PerturbedStory::noop.
enum class ErrorCode {
  kInvalidInput,
  kDegeneratePerturbation,
  kScoringError,
  kEmptyScore,
  kBatchError,
  kIngestError,
  kUndefinedCorrelation,
  kInsufficientData,
  kServiceError,
  kReplayMiss,
  kEmptyResult,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Rethrows `error` with `context` prefixed to its message, keeping the code.
[[noreturn]] void RethrowWithContext(const Error& error,
                                     std::string_view context);

}  // namespace deltascore

#endif  // DELTASCORE_ERROR_H_
