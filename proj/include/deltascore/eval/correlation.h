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

#ifndef DELTASCORE_EVAL_CORRELATION_H_
#define DELTASCORE_EVAL_CORRELATION_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "deltascore/eval/dataset.h"
#include "deltascore/eval/kendall.h"

namespace deltascore::eval {

// Story id -> metric score. NaN marks a story the metric could not score.
using ScoreMap = std::map<std::string, double>;

struct CorrelationReport {
  std::string metric_id;
  std::string dataset_id;
  Aspect aspect = Aspect::kFluency;
  double tau = 0.0;  // Signed tau-b.
  double abs_tau = 0.0;
  std::size_t n = 0;  // Stories used.
  PairCounts counts;
  // Rated stories left out for a missing or NaN score or a missing rating.
  std::vector<std::string> excluded_ids;
};

// Story-level Kendall tau-b between `scores` and the mean human rating for
// `aspect`. Throws InvalidInput listing score ids absent from `rated`,
// InsufficientData when fewer than 2 stories remain, UndefinedCorrelation when
// either side is constant.
CorrelationReport CorrelateAspect(const ScoreMap& scores,
                                  std::span<const RatedStory> rated,
                                  Aspect aspect, std::string metric_id,
                                  std::string dataset_id);

// Score ids with no matching rated story.
std::vector<std::string> OrphanIds(const ScoreMap& scores,
                                   std::span<const RatedStory> rated);

}  // namespace deltascore::eval

#endif  // DELTASCORE_EVAL_CORRELATION_H_
