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

#include "deltascore/eval/correlation.h"

#include <cmath>
#include <set>
#include <utility>

#include "deltascore/error.h"

namespace deltascore::eval {

std::vector<std::string> OrphanIds(const ScoreMap& scores,
                                   std::span<const RatedStory> rated) {
  std::set<std::string> known;
  for (const RatedStory& r : rated) known.insert(r.story.id);
  std::vector<std::string> orphans;
  for (const auto& [id, score] : scores) {
    if (!known.contains(id)) orphans.push_back(id);
  }
  return orphans;
}

CorrelationReport CorrelateAspect(const ScoreMap& scores,
                                  std::span<const RatedStory> rated,
                                  Aspect aspect, std::string metric_id,
                                  std::string dataset_id) {
  const std::vector<std::string> orphans = OrphanIds(scores, rated);
  if (!orphans.empty()) {
    std::string message = std::to_string(orphans.size()) +
                          " scored id(s) not in dataset '" + dataset_id + "':";
    for (const std::string& id : orphans) message += " " + id;
    throw Error(ErrorCode::kInvalidInput, message);
  }

  CorrelationReport report;
  report.metric_id = std::move(metric_id);
  report.dataset_id = std::move(dataset_id);
  report.aspect = aspect;

  std::vector<double> xs;
  std::vector<double> ys;
  for (const RatedStory& r : rated) {
    const auto score = scores.find(r.story.id);
    const auto ratings = r.ratings.find(aspect);
    if (score == scores.end() || std::isnan(score->second) ||
        ratings == r.ratings.end() || ratings->second.empty()) {
      report.excluded_ids.push_back(r.story.id);
      continue;
    }
    xs.push_back(score->second);
    ys.push_back(AggregateRatings(ratings->second));
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                report.metric_id + " / " + report.dataset_id + " / " +
                    std::string(perturb::AspectName(aspect)) + ": " +
                    std::to_string(xs.size()) + " usable stories, need 2");
  }
  const KendallResult kendall = KendallTau(xs, ys);
  report.tau = kendall.tau;
  report.abs_tau = std::fabs(kendall.tau);
  report.n = xs.size();
  report.counts = kendall.counts;
  return report;
}

}  // namespace deltascore::eval
