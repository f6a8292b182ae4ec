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

#ifndef DELTASCORE_PERTURB_SPEC_H_
#define DELTASCORE_PERTURB_SPEC_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltascore::perturb {

enum class Kind {
  kTypo,
  kSubjVerbDis,
  kJumble,
  kSentReorder,
  kRmRelWords,
  kStoryReplace,
  kAntonym,
  kCommonsense,
  kBlanderNarrative,
};

inline constexpr std::array<Kind, 9> kAllKinds = {
    Kind::kTypo,         Kind::kSubjVerbDis,  Kind::kJumble,
    Kind::kSentReorder,  Kind::kRmRelWords,   Kind::kStoryReplace,
    Kind::kAntonym,      Kind::kCommonsense,  Kind::kBlanderNarrative};

// "Typo", "SubjVerbDis", ...
std::string_view KindName(Kind kind);
// Case-insensitive; also accepts snake_case ("subj_verb_dis").
std::optional<Kind> ParseKind(std::string_view name);

// Typo, Jumble and Antonym take a degree; every other kind runs at 1.0.
bool KindTakesDegree(Kind kind);

enum class Aspect {
  kFluency,
  kCoherence,
  kRelatedness,
  kLogicality,
  kInterestingness,
};

inline constexpr std::array<Aspect, 5> kAllAspects = {
    Aspect::kFluency, Aspect::kCoherence, Aspect::kRelatedness,
    Aspect::kLogicality, Aspect::kInterestingness};

std::string_view AspectName(Aspect aspect);    // "fluency"
std::string_view AspectAbbrev(Aspect aspect);  // "Flu."
std::optional<Aspect> ParseAspect(std::string_view name);

struct PerturbationSpec {
  Kind kind = Kind::kJumble;
  double degree = 1.0;
  std::uint64_t seed = 0;

  bool operator==(const PerturbationSpec&) const = default;
};

// Throws InvalidInput when degree is outside [0, 1] or a degree-less kind is
// given a degree other than 1.0.
void Validate(const PerturbationSpec& spec);

// "Jumble@0.9"
std::string SpecLabel(const PerturbationSpec& spec);

struct Edit {
  std::string op;
  std::size_t position = 0;  // Token (or sentence) index in the original.
  std::string before;
  std::string after;

  bool operator==(const Edit&) const = default;
};

struct PerturbedStory {
  std::string original_id;
  std::string original;
  std::string text;
  PerturbationSpec spec;
  std::vector<Edit> edits;
  // Output provably equals the input. Not an error: deltas are forced to 0.
  bool noop = false;
  std::string noop_reason;
};

}  // namespace deltascore::perturb

#endif  // DELTASCORE_PERTURB_SPEC_H_
