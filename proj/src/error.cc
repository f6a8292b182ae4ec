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

#include "deltascore/error.h"

#include <string>

namespace deltascore {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "InvalidInput";
    case ErrorCode::kDegeneratePerturbation:
      return "DegeneratePerturbation";
    case ErrorCode::kScoringError:
      return "ScoringError";
    case ErrorCode::kEmptyScore:
      return "EmptyScoreError";
    case ErrorCode::kBatchError:
      return "BatchError";
    case ErrorCode::kIngestError:
      return "IngestError";
    case ErrorCode::kUndefinedCorrelation:
      return "UndefinedCorrelation";
    case ErrorCode::kInsufficientData:
      return "InsufficientData";
    case ErrorCode::kServiceError:
      return "ServiceError";
    case ErrorCode::kReplayMiss:
      return "ReplayMiss";
    case ErrorCode::kEmptyResult:
      return "EmptyResult";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void RethrowWithContext(const Error& error, std::string_view context) {
  std::string message = error.what();
  // Strip the "<Code>: " prefix so it is not repeated.
  const std::string prefix = std::string(ErrorCodeName(error.code())) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  throw Error(error.code(), std::string(context) + ": " + message);
}

}  // namespace deltascore
