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

// The `deltascore` command line: perturb, train-lm, delta and correlate.

#ifndef DELTASCORE_CLI_COMMANDS_H_
#define DELTASCORE_CLI_COMMANDS_H_

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "deltascore/delta/delta_score.h"
#include "deltascore/error.h"
#include "deltascore/eval/correlation.h"
#include "deltascore/perturb/spec.h"

namespace deltascore::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitBackend = 3,
};

ExitCode ExitCodeFor(ErrorCode code);

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// One JSON Lines record, without the newline.
std::string PerturbationRecord(const perturb::PerturbedStory& perturbed);
std::string DeltaRecord(const delta::DeltaResult& result,
                        const std::string& profile);

// (metric, aspect) -> scores, read from DeltaRecord lines. The metric is the
// "profile" field, or "Kind@degree" when it is absent. A null delta reads as
// NaN. Throws IngestError on malformed lines or a repeated
// (metric, aspect, id).
struct ScoreTable {
  std::vector<std::string> metrics;  // In order of first appearance.
  std::map<std::pair<std::string, perturb::Aspect>, eval::ScoreMap> scores;
};
ScoreTable ParseDeltaRecords(std::istream& in);

// Writes `contents` to `path` through a temporary file and a rename.
void WriteFileAtomically(const std::string& path, const std::string& contents);

}  // namespace deltascore::cli

#endif  // DELTASCORE_CLI_COMMANDS_H_
