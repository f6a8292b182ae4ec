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

#include "deltascore/llm/prompt.h"

#include "deltascore/error.h"
#include "deltascore/text.h"

namespace deltascore::llm {
namespace {

constexpr std::string_view kRelevantWordsText =
    "Find all words in the given story that is relevant to the given title. "
    "Please only print words in the given story, and separate them by ','. "
    "\"title\": {title}, \"story\": {story}";

constexpr std::string_view kCommonsenseText =
    "Revise the following story such that certain elements does not make "
    "sense. The revision should be minimal, e.g., by changing a few words. "
    "\"story\": {story}";

constexpr std::string_view kBlanderNarrativeText =
    "Revise the following story to make it less interesting (e.g., expected "
    "ending, no plot twist). The revision should be minimal. "
    "\"story\": {story}";

constexpr std::string_view kTitleSlot = "{title}";
constexpr std::string_view kStorySlot = "{story}";

}  // namespace

std::string_view TemplateName(TemplateId id) {
  switch (id) {
    case TemplateId::kRelevantWords:
      return "RelevantWords";
    case TemplateId::kCommonsense:
      return "Commonsense";
    case TemplateId::kBlanderNarrative:
      return "BlanderNarrative";
  }
  return "";
}

std::optional<TemplateId> ParseTemplateId(std::string_view name) {
  const std::string lower = text::AsciiLower(name);
  if (lower == "relevantwords") return TemplateId::kRelevantWords;
  if (lower == "commonsense") return TemplateId::kCommonsense;
  if (lower == "blandernarrative") return TemplateId::kBlanderNarrative;
  return std::nullopt;
}

std::string_view TemplateText(TemplateId id) {
  switch (id) {
    case TemplateId::kRelevantWords:
      return kRelevantWordsText;
    case TemplateId::kCommonsense:
      return kCommonsenseText;
    case TemplateId::kBlanderNarrative:
      return kBlanderNarrativeText;
  }
  return "";
}

bool TemplateNeedsTitle(TemplateId id) {
  return id == TemplateId::kRelevantWords;
}

std::string RenderPrompt(TemplateId id, std::string_view title,
                         std::string_view story) {
  if (text::IsBlank(story)) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(TemplateName(id)) + " prompt needs a story");
  }
  if (TemplateNeedsTitle(id) && text::IsBlank(title)) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(TemplateName(id)) + " prompt needs a title");
  }
  const std::string_view tmpl = TemplateText(id);
  std::string out;
  out.reserve(tmpl.size() + title.size() + story.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    const std::string_view rest = tmpl.substr(i);
    if (rest.starts_with(kTitleSlot)) {
      out.append(title);
      i += kTitleSlot.size();
    } else if (rest.starts_with(kStorySlot)) {
      out.append(story);
      i += kStorySlot.size();
    } else {
      out.push_back(tmpl[i]);
      ++i;
    }
  }
  return out;
}

WordSet ParseRelevantWords(std::string_view response) {
  WordSet words;
  std::size_t start = 0;
  while (start <= response.size()) {
    std::size_t comma = response.find(',', start);
    if (comma == std::string_view::npos) comma = response.size();
    const std::string_view item = text::Trim(response.substr(start, comma - start));
    if (!item.empty()) words.insert(text::AsciiLower(item));
    start = comma + 1;
  }
  if (words.empty()) {
    throw Error(ErrorCode::kEmptyResult,
                "no relevant words in service response");
  }
  return words;
}

}  // namespace deltascore::llm
