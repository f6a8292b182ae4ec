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

#ifndef DELTASCORE_LLM_PROMPT_H_
#define DELTASCORE_LLM_PROMPT_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace deltascore::llm {

enum class TemplateId { kRelevantWords, kCommonsense, kBlanderNarrative };

std::string_view TemplateName(TemplateId id);
std::optional<TemplateId> ParseTemplateId(std::string_view name);

// Raw template text with {title} / {story} slots.
std::string_view TemplateText(TemplateId id);

bool TemplateNeedsTitle(TemplateId id);

// Fills the template's slots in a single pass, so braces inside the title or
// story are never re-expanded. Throws InvalidInput when a required slot value
// is blank.
std::string RenderPrompt(TemplateId id, std::string_view title,
                         std::string_view story);

using WordSet = std::set<std::string>;

// Splits a comma-separated service answer, trims, lower-cases and drops
// empties. Throws EmptyResult when nothing usable remains.
WordSet ParseRelevantWords(std::string_view response);

}  // namespace deltascore::llm

#endif  // DELTASCORE_LLM_PROMPT_H_
