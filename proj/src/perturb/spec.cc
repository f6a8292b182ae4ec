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

#include "deltascore/perturb/spec.h"

#include <charconv>
#include <cmath>

#include "deltascore/error.h"
#include "deltascore/text.h"

namespace deltascore::perturb {

std::string_view KindName(Kind kind) {
  switch (kind) {
    case Kind::kTypo:
      return "Typo";
    case Kind::kSubjVerbDis:
      return "SubjVerbDis";
    case Kind::kJumble:
      return "Jumble";
    case Kind::kSentReorder:
      return "SentReorder";
    case Kind::kRmRelWords:
      return "RmRelWords";
    case Kind::kStoryReplace:
      return "StoryReplace";
    case Kind::kAntonym:
      return "Antonym";
    case Kind::kCommonsense:
      return "Commonsense";
    case Kind::kBlanderNarrative:
      return "BlanderNarrative";
  }
  return "";
}

std::optional<Kind> ParseKind(std::string_view name) {
  std::string folded;
  for (char c : text::AsciiLower(name)) {
    if (c != '_' && c != '-') folded.push_back(c);
  }
  for (Kind kind : kAllKinds) {
    if (text::AsciiLower(KindName(kind)) == folded) return kind;
  }
  return std::nullopt;
}

bool KindTakesDegree(Kind kind) {
  return kind == Kind::kTypo || kind == Kind::kJumble ||
         kind == Kind::kAntonym;
}

std::string_view AspectName(Aspect aspect) {
  switch (aspect) {
    case Aspect::kFluency:
      return "fluency";
    case Aspect::kCoherence:
      return "coherence";
    case Aspect::kRelatedness:
      return "relatedness";
    case Aspect::kLogicality:
      return "logicality";
    case Aspect::kInterestingness:
      return "interestingness";
  }
  return "";
}

std::string_view AspectAbbrev(Aspect aspect) {
  switch (aspect) {
    case Aspect::kFluency:
      return "Flu.";
    case Aspect::kCoherence:
      return "Coh.";
    case Aspect::kRelatedness:
      return "Rel.";
    case Aspect::kLogicality:
      return "Log.";
    case Aspect::kInterestingness:
      return "Int.";
  }
  return "";
}

std::optional<Aspect> ParseAspect(std::string_view name) {
  const std::string lower = text::AsciiLower(name);
  for (Aspect aspect : kAllAspects) {
    if (AspectName(aspect) == lower) return aspect;
  }
  return std::nullopt;
}

void Validate(const PerturbationSpec& spec) {
  if (!(spec.degree >= 0.0 && spec.degree <= 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "degree must be in [0, 1], got " + std::to_string(spec.degree));
  }
  if (!KindTakesDegree(spec.kind) && spec.degree != 1.0) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(KindName(spec.kind)) +
                    " has no degree; it must be 1.0");
  }
}

std::string SpecLabel(const PerturbationSpec& spec) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), spec.degree);
  return std::string(KindName(spec.kind)) + "@" + std::string(buf, result.ptr);
}

}  // namespace deltascore::perturb
