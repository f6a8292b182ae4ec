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

// Aspect-targeted story perturbations. Every function except the
// service-backed ones is a pure function of (story, parameters): the same
// inputs give byte-identical output on any platform.
//
// Perturbations that find nothing to change return the input unchanged with
// `noop` set rather than failing.

#ifndef DELTASCORE_PERTURB_PERTURBATIONS_H_
#define DELTASCORE_PERTURB_PERTURBATIONS_H_

#include <cstdint>
#include <span>
#include <string>

#include "deltascore/llm/client.h"
#include "deltascore/llm/prompt.h"
#include "deltascore/perturb/antonym_lexicon.h"
#include "deltascore/perturb/spec.h"
#include "deltascore/scoring/scoring.h"
#include "deltascore/text.h"

namespace deltascore::perturb {

using llm::WordSet;

// Transposes one adjacent character pair in each of round(degree * W)
// distinct eligible tokens, chosen uniformly without replacement. A token is
// eligible when it has at least two bytes, a letter, and an adjacent pair of
// distinct ASCII characters. Whitespace and character count are preserved.
PerturbedStory PerturbTypo(const ConditionedStory& story, double degree,
                           std::uint64_t seed);

// Flips verb agreement with a closed lexicon (is->am, am->is, are->is,
// was<->were, has<->have, does<->do) and by adding or stripping -s on the
// word directly after a personal pronoun. Deterministic; `seed` is recorded
// only.
PerturbedStory PerturbSubjVerb(const ConditionedStory& story,
                               std::uint64_t seed);

// Shuffles tokens within consecutive spans of L = max(2, round(degree * m))
// tokens; degree 1.0 shuffles the whole story. Degree 0 is a no-op.
PerturbedStory PerturbJumble(const ConditionedStory& story, double degree,
                             std::uint64_t seed);

// Uniformly permutes sentences. Two sentences are always swapped; with three
// or more an identity draw is resampled once.
PerturbedStory PerturbSentReorder(const ConditionedStory& story,
                                  std::uint64_t seed);

// Deletes every token whose lower-cased form is in `relevant_words`.
// InvalidInput for an empty set; DegeneratePerturbation if nothing would be
// left.
PerturbedStory PerturbRmRelWords(const ConditionedStory& story,
                                 const WordSet& relevant_words);

// Replaces the story with the pool member whose unconditional mean
// log-likelihood is closest to the original's; ties go to the smallest id.
// The pool is used as given (see BuildReplacementPool).
PerturbedStory PerturbStoryReplace(const ConditionedStory& story,
                                   std::span<const ConditionedStory> pool,
                                   const scoring::Backend& backend);

// Stories from `corpus` with a different condition and id than `story`.
std::vector<ConditionedStory> BuildReplacementPool(
    const ConditionedStory& story, std::span<const ConditionedStory> corpus);

// Replaces each token that has a lexicon entry with its first antonym,
// independently with probability `degree`. The case of the first letter is
// kept.
PerturbedStory PerturbAntonym(const ConditionedStory& story, double degree,
                              std::uint64_t seed,
                              const AntonymLexicon& lexicon);

// Sends the Commonsense or BlanderNarrative prompt with the story and uses the
// answer as the perturbed story. The raw prompt and answer are kept in the
// edit log. ServiceError on transport failure; DegeneratePerturbation on a
// blank answer.
PerturbedStory PerturbViaService(const ConditionedStory& story,
                                 llm::TemplateId template_id,
                                 const llm::TextService& service);

// Asks the service which story words relate to the condition (used as the
// title).
WordSet RelevantWordsViaService(const ConditionedStory& story,
                                const llm::TextService& service);

// Handles for kinds that need more than (story, spec).
struct PerturbationContext {
  const AntonymLexicon* antonyms = nullptr;
  const llm::TextService* service = nullptr;
  // Fixed relevant-word set for RmRelWords; the service is asked otherwise.
  const WordSet* relevant_words = nullptr;
  // StoryReplace candidates; filtered through BuildReplacementPool.
  std::span<const ConditionedStory> corpus;
  const scoring::Backend* backend = nullptr;
};

// Dispatches on spec.kind. InvalidInput when the context lacks a handle the
// kind needs.
PerturbedStory Perturb(const ConditionedStory& story,
                       const PerturbationSpec& spec,
                       const PerturbationContext& context);

}  // namespace deltascore::perturb

#endif  // DELTASCORE_PERTURB_PERTURBATIONS_H_
