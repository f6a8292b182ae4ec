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

// Likelihood difference between a story and its perturbed version:
//
//   delta = log p(s|c) - log p(s'|c)
//
// where both terms are token-mean natural-log likelihoods under the same
// backend and condition. A larger delta means the perturbation hurt the story
// more, which is read as higher quality on the perturbation's aspect.

#ifndef DELTASCORE_DELTA_DELTA_SCORE_H_
#define DELTASCORE_DELTA_DELTA_SCORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltascore/perturb/perturbations.h"
#include "deltascore/perturb/profiles.h"
#include "deltascore/perturb/spec.h"
#include "deltascore/scoring/scoring.h"
#include "deltascore/text.h"

namespace deltascore::delta {

struct DeltaFlags {
  bool noop = false;        // Every replicate left the story unchanged.
  bool truncated = false;   // Some scored sequence was capped.
  bool degenerate = false;  // The perturbation erased the story.

  bool operator==(const DeltaFlags&) const = default;
};

// For a degenerate result logp_perturbed and delta are NaN.
struct DeltaResult {
  std::string id;
  std::optional<perturb::Aspect> aspect;
  perturb::PerturbationSpec spec;  // Seed of replicate 0.
  double logp_original = 0.0;
  double logp_perturbed = 0.0;
  double delta = 0.0;
  DeltaFlags flags;
  int replicates = 1;
};

// Perturbs `story` with `spec` (seed used as given), scores both versions and
// subtracts. A no-op perturbation gives delta 0 without scoring the copy.
// Scoring and perturbation errors propagate with the story id prefixed.
DeltaResult DeltaScore(const ConditionedStory& story,
                       const perturb::PerturbationSpec& spec,
                       const scoring::Backend& backend,
                       const perturb::PerturbationContext& context = {});

// Delta of an already perturbed text; `perturbed` replaces story.story.
DeltaResult DeltaBetween(const ConditionedStory& story,
                         std::string_view perturbed,
                         const scoring::Backend& backend);

struct EvaluationOptions {
  std::uint64_t global_seed = 0;
  // Deltas averaged over this many independently seeded perturbations.
  int replicates = 1;
};

// One DeltaResult per profile, in profile order. The original is scored once
// and profiles sharing a (kind, degree) share one perturbation. Replicate r
// uses DeriveSeed(global_seed, story.id, KindName(kind), r).
std::vector<DeltaResult> EvaluateAspects(
    const ConditionedStory& story, const perturb::ProfileSet& profiles,
    const scoring::Backend& backend,
    const perturb::PerturbationContext& context,
    const EvaluationOptions& options = {});

// EvaluateAspects over a corpus with up to `jobs` stories in flight. Results
// are story-major in input order. The error of the first failing story (by
// input position) is rethrown.
std::vector<DeltaResult> EvaluateCorpus(
    std::span<const ConditionedStory> stories,
    const perturb::ProfileSet& profiles, const scoring::Backend& backend,
    const perturb::PerturbationContext& context,
    const EvaluationOptions& options = {}, int jobs = 1);

}  // namespace deltascore::delta

#endif  // DELTASCORE_DELTA_DELTA_SCORE_H_
