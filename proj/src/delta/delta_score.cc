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

#include "deltascore/delta/delta_score.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <map>
#include <thread>
#include <utility>

#include "deltascore/error.h"
#include "deltascore/rng.h"

namespace deltascore::delta {
namespace {

using perturb::Kind;
using perturb::PerturbationSpec;
using perturb::PerturbedStory;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string Context(const ConditionedStory& story,
                    const PerturbationSpec& spec) {
  return "story '" + story.id + "' " + perturb::SpecLabel(spec);
}

// Kinds whose output does not depend on the seed; replicates would repeat the
// same work.
bool SeedIndependent(Kind kind) {
  switch (kind) {
    case Kind::kTypo:
    case Kind::kJumble:
    case Kind::kSentReorder:
    case Kind::kAntonym:
      return false;
    default:
      return true;
  }
}

struct Replicate {
  double logp_perturbed = 0.0;
  bool noop = false;
  bool truncated = false;
  bool degenerate = false;
};

Replicate RunReplicate(const ConditionedStory& story,
                       const PerturbationSpec& spec,
                       const scoring::TokenLogLik& original,
                       const scoring::Backend& backend,
                       const perturb::PerturbationContext& context) {
  Replicate replicate;
  try {
    const PerturbedStory perturbed = perturb::Perturb(story, spec, context);
    if (perturbed.noop) {
      replicate.noop = true;
      replicate.logp_perturbed = original.mean_logprob;
      return replicate;
    }
    const scoring::TokenLogLik scored =
        scoring::ScoreConditional(backend, story.condition, perturbed.text);
    replicate.logp_perturbed = scored.mean_logprob;
    replicate.truncated = scored.truncated;
  } catch (const Error& error) {
    if (error.code() != ErrorCode::kDegeneratePerturbation) {
      RethrowWithContext(error, Context(story, spec));
    }
    replicate.degenerate = true;
    replicate.logp_perturbed = kNaN;
  }
  return replicate;
}

DeltaResult Combine(const ConditionedStory& story,
                    const PerturbationSpec& first_spec,
                    const scoring::TokenLogLik& original,
                    std::span<const Replicate> replicates) {
  DeltaResult result;
  result.id = story.id;
  result.spec = first_spec;
  result.logp_original = original.mean_logprob;
  result.replicates = static_cast<int>(replicates.size());
  result.flags.truncated = original.truncated;
  result.flags.noop = true;
  double sum = 0.0;
  for (const Replicate& r : replicates) {
    result.flags.noop = result.flags.noop && r.noop;
    result.flags.truncated = result.flags.truncated || r.truncated;
    result.flags.degenerate = result.flags.degenerate || r.degenerate;
    sum += r.logp_perturbed;
  }
  if (result.flags.degenerate) {
    result.flags.noop = false;
    result.logp_perturbed = kNaN;
    result.delta = kNaN;
  } else if (result.flags.noop) {
    result.logp_perturbed = result.logp_original;
    result.delta = 0.0;
  } else {
    result.logp_perturbed = sum / static_cast<double>(replicates.size());
    result.delta = result.logp_original - result.logp_perturbed;
  }
  return result;
}

scoring::TokenLogLik ScoreOriginal(const ConditionedStory& story,
                                   const scoring::Backend& backend) {
  try {
    return scoring::ScoreConditional(backend, story.condition, story.story);
  } catch (const Error& error) {
    RethrowWithContext(error, "story '" + story.id + "' original");
  }
}

}  // namespace

DeltaResult DeltaScore(const ConditionedStory& story,
                       const PerturbationSpec& spec,
                       const scoring::Backend& backend,
                       const perturb::PerturbationContext& context) {
  perturb::Validate(spec);
  const scoring::TokenLogLik original = ScoreOriginal(story, backend);
  const Replicate replicate =
      RunReplicate(story, spec, original, backend, context);
  return Combine(story, spec, original, std::span(&replicate, 1));
}

DeltaResult DeltaBetween(const ConditionedStory& story,
                         std::string_view perturbed,
                         const scoring::Backend& backend) {
  const scoring::TokenLogLik original = ScoreOriginal(story, backend);
  Replicate replicate;
  if (perturbed == story.story) {
    replicate.noop = true;
    replicate.logp_perturbed = original.mean_logprob;
  } else {
    try {
      const scoring::TokenLogLik scored =
          scoring::ScoreConditional(backend, story.condition, perturbed);
      replicate.logp_perturbed = scored.mean_logprob;
      replicate.truncated = scored.truncated;
    } catch (const Error& error) {
      RethrowWithContext(error, "story '" + story.id + "' perturbed text");
    }
  }
  DeltaResult result =
      Combine(story, PerturbationSpec{}, original, std::span(&replicate, 1));
  return result;
}

std::vector<DeltaResult> EvaluateAspects(
    const ConditionedStory& story, const perturb::ProfileSet& profiles,
    const scoring::Backend& backend,
    const perturb::PerturbationContext& context,
    const EvaluationOptions& options) {
  perturb::Validate(profiles);
  if (options.replicates < 1) {
    throw Error(ErrorCode::kInvalidInput, "replicates must be >= 1");
  }
  const scoring::TokenLogLik original = ScoreOriginal(story, backend);

  std::map<std::pair<Kind, double>, DeltaResult> cache;
  std::vector<DeltaResult> results;
  results.reserve(profiles.profiles.size());
  for (const perturb::AspectProfile& profile : profiles.profiles) {
    const auto key = std::make_pair(profile.spec.kind, profile.spec.degree);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const std::string_view kind_name = perturb::KindName(profile.spec.kind);
      const int count =
          SeedIndependent(profile.spec.kind) ? 1 : options.replicates;
      std::vector<Replicate> replicates;
      PerturbationSpec first_spec = profile.spec;
      for (int r = 0; r < count; ++r) {
        PerturbationSpec spec = profile.spec;
        spec.seed = DeriveSeed(options.global_seed, story.id, kind_name,
                               static_cast<std::uint64_t>(r));
        if (r == 0) first_spec = spec;
        replicates.push_back(
            RunReplicate(story, spec, original, backend, context));
      }
      it = cache
               .emplace(key, Combine(story, first_spec, original, replicates))
               .first;
    }
    DeltaResult result = it->second;
    result.aspect = profile.aspect;
    results.push_back(std::move(result));
  }
  return results;
}

std::vector<DeltaResult> EvaluateCorpus(
    std::span<const ConditionedStory> stories,
    const perturb::ProfileSet& profiles, const scoring::Backend& backend,
    const perturb::PerturbationContext& context,
    const EvaluationOptions& options, int jobs) {
  std::vector<std::vector<DeltaResult>> per_story(stories.size());
  std::vector<std::exception_ptr> errors(stories.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= stories.size()) return;
      try {
        per_story[i] =
            EvaluateAspects(stories[i], profiles, backend, context, options);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(jobs, 1)), 1,
      std::max<std::size_t>(stories.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  }

  // Indices are claimed in order, so every index below a recorded failure
  // has run to completion and the first recorded error is the first overall.
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  std::vector<DeltaResult> results;
  for (std::vector<DeltaResult>& story_results : per_story) {
    for (DeltaResult& r : story_results) results.push_back(std::move(r));
  }
  return results;
}

}  // namespace deltascore::delta
