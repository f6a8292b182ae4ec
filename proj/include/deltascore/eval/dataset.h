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

// Rated story datasets, one JSON object per line:
//
//   {"id": "roc-17", "condition": "...", "story": "...", "system": "gpt2",
//    "ratings": {"fluency": [4, 5, 4], "coherence": [3, 3, 4], ...}}
//
// "system" and "ratings" are optional; so is each aspect inside "ratings".

#ifndef DELTASCORE_EVAL_DATASET_H_
#define DELTASCORE_EVAL_DATASET_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltascore/perturb/spec.h"
#include "deltascore/text.h"

namespace deltascore::eval {

using perturb::Aspect;

struct RatedStory {
  ConditionedStory story;
  std::map<Aspect, std::vector<int>> ratings;  // Each score in 1..5.
};

// Throws IngestError listing up to the first 10 offending lines
// ("line 3: ratings.fluency[1]: 6 outside 1..5"). Blank lines are skipped.
// Duplicate ids are errors.
std::vector<RatedStory> ParseDataset(std::istream& in);
std::vector<RatedStory> LoadDataset(const std::string& path);

// Mean annotator score per present aspect.
std::map<Aspect, double> AggregateRatings(const RatedStory& story);
double AggregateRatings(const std::vector<int>& scores);

std::vector<ConditionedStory> StoriesOf(const std::vector<RatedStory>& rated);

}  // namespace deltascore::eval

#endif  // DELTASCORE_EVAL_DATASET_H_
