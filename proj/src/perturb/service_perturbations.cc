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
#include "deltascore/perturb/perturbations.h"

namespace deltascore::perturb {
namespace {

std::string AskService(const llm::TextService& service,
                       const std::string& prompt) {
  try {
    return service.Complete(prompt);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kServiceError, e.what());
  }
}

}  // namespace

PerturbedStory PerturbViaService(const ConditionedStory& story,
                                 llm::TemplateId template_id,
                                 const llm::TextService& service) {
  Kind kind;
  switch (template_id) {
    case llm::TemplateId::kCommonsense:
      kind = Kind::kCommonsense;
      break;
    case llm::TemplateId::kBlanderNarrative:
      kind = Kind::kBlanderNarrative;
      break;
    default:
      throw Error(ErrorCode::kInvalidInput,
                  std::string(llm::TemplateName(template_id)) +
                      " does not produce a story");
  }
  ValidateStory(story);
  PerturbedStory result;
  result.original_id = story.id;
  result.original = story.story;
  result.spec = PerturbationSpec{kind, 1.0, 0};

  const std::string prompt =
      llm::RenderPrompt(template_id, story.condition, story.story);
  const std::string response = AskService(service, prompt);
  result.edits.push_back({"service", 0, prompt, response});

  const std::string_view revised = text::Trim(response);
  if (revised.empty()) {
    throw Error(ErrorCode::kDegeneratePerturbation,
                "service returned an empty story for '" + story.id + "'");
  }
  if (revised == text::Trim(story.story)) {
    result.text = story.story;
    result.noop = true;
    result.noop_reason = "service returned the story unchanged";
    return result;
  }
  result.text = std::string(revised);
  return result;
}

WordSet RelevantWordsViaService(const ConditionedStory& story,
                                const llm::TextService& service) {
  const std::string prompt = llm::RenderPrompt(
      llm::TemplateId::kRelevantWords, story.condition, story.story);
  return llm::ParseRelevantWords(AskService(service, prompt));
}

}  // namespace deltascore::perturb
