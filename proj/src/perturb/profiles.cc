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

#include "deltascore/perturb/profiles.h"

#include <charconv>
#include <set>

#include "deltascore/error.h"
#include "deltascore/text.h"

namespace deltascore::perturb {

void Validate(const ProfileSet& set) {
  std::set<Aspect> seen;
  for (const AspectProfile& profile : set.profiles) {
    if (!seen.insert(profile.aspect).second) {
      throw Error(ErrorCode::kInvalidInput,
                  "profile set '" + set.name + "' repeats aspect " +
                      std::string(AspectName(profile.aspect)));
    }
    Validate(profile.spec);
  }
}

Aspect TargetAspect(Kind kind) {
  switch (kind) {
    case Kind::kTypo:
    case Kind::kSubjVerbDis:
      return Aspect::kFluency;
    case Kind::kJumble:
    case Kind::kSentReorder:
      return Aspect::kCoherence;
    case Kind::kRmRelWords:
    case Kind::kStoryReplace:
      return Aspect::kRelatedness;
    case Kind::kAntonym:
    case Kind::kCommonsense:
      return Aspect::kLogicality;
    case Kind::kBlanderNarrative:
      return Aspect::kInterestingness;
  }
  return Aspect::kFluency;
}

double DefaultDegree(Kind kind) {
  switch (kind) {
    case Kind::kTypo:
      return 0.4;
    case Kind::kJumble:
      return 0.9;
    case Kind::kAntonym:
      return 0.8;
    default:
      return 1.0;
  }
}

ProfileSet UniformProfileSet(const PerturbationSpec& spec) {
  ProfileSet set;
  set.name = SpecLabel(spec);
  for (Aspect aspect : kAllAspects) set.profiles.push_back({aspect, spec});
  return set;
}

DefaultProfileSets DefaultProfiles() {
  DefaultProfileSets sets;
  for (Kind kind : {Kind::kTypo, Kind::kJumble, Kind::kAntonym}) {
    sets.production.push_back(
        UniformProfileSet(PerturbationSpec{kind, DefaultDegree(kind), 0}));
  }
  sets.aspect_targeted.name = "targeted";
  for (Kind kind : {Kind::kSubjVerbDis, Kind::kSentReorder, Kind::kRmRelWords,
                    Kind::kCommonsense, Kind::kBlanderNarrative}) {
    sets.aspect_targeted.profiles.push_back(
        {TargetAspect(kind), PerturbationSpec{kind, 1.0, 0}});
  }
  return sets;
}

std::optional<Aspect> AspectOf(const ProfileSet& set, Kind kind) {
  for (const AspectProfile& profile : set.profiles) {
    if (profile.spec.kind == kind) return profile.aspect;
  }
  return std::nullopt;
}

std::optional<PerturbationSpec> SpecFor(const ProfileSet& set, Aspect aspect) {
  for (const AspectProfile& profile : set.profiles) {
    if (profile.aspect == aspect) return profile.spec;
  }
  return std::nullopt;
}

std::vector<ProfileSet> ResolveProfiles(std::string_view name) {
  const DefaultProfileSets defaults = DefaultProfiles();
  const std::string lower = text::AsciiLower(name);
  if (lower == "production") return defaults.production;
  if (lower == "targeted") return {defaults.aspect_targeted};

  const std::size_t at = name.find('@');
  const auto kind = ParseKind(name.substr(0, at));
  if (!kind) {
    throw Error(ErrorCode::kInvalidInput,
                "unknown profile '" + std::string(name) + "'");
  }
  PerturbationSpec spec{*kind, DefaultDegree(*kind), 0};
  if (at != std::string_view::npos) {
    const std::string_view degree = name.substr(at + 1);
    const auto result =
        std::from_chars(degree.data(), degree.data() + degree.size(),
                        spec.degree);
    if (result.ec != std::errc() ||
        result.ptr != degree.data() + degree.size()) {
      throw Error(ErrorCode::kInvalidInput,
                  "bad degree in profile '" + std::string(name) + "'");
    }
  }
  Validate(spec);
  return {UniformProfileSet(spec)};
}

}  // namespace deltascore::perturb
