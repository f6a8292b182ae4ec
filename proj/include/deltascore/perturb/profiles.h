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

#ifndef DELTASCORE_PERTURB_PROFILES_H_
#define DELTASCORE_PERTURB_PROFILES_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltascore/perturb/spec.h"

namespace deltascore::perturb {

struct AspectProfile {
  Aspect aspect;
  PerturbationSpec spec;  // Seed is a placeholder; runs derive per-story seeds.
};

// At most one profile per aspect.
struct ProfileSet {
  std::string name;
  std::vector<AspectProfile> profiles;
};

// Throws InvalidInput when an aspect repeats or a spec is invalid.
void Validate(const ProfileSet& set);

// The aspect each perturbation was designed for:
// Typo, SubjVerbDis -> fluency; Jumble, SentReorder -> coherence;
// RmRelWords, StoryReplace -> relatedness; Antonym, Commonsense -> logicality;
// BlanderNarrative -> interestingness.
Aspect TargetAspect(Kind kind);

// Production degree: Typo 0.4, Jumble 0.9, Antonym 0.8; 1.0 for the rest.
double DefaultDegree(Kind kind);

// One spec applied to every aspect.
ProfileSet UniformProfileSet(const PerturbationSpec& spec);

struct DefaultProfileSets {
  // Typo@0.4, Jumble@0.9 and Antonym@0.8, each covering all five aspects.
  std::vector<ProfileSet> production;
  // One designed perturbation per aspect: SubjVerbDis, SentReorder,
  // RmRelWords, Commonsense, BlanderNarrative.
  ProfileSet aspect_targeted;
};

DefaultProfileSets DefaultProfiles();

std::optional<Aspect> AspectOf(const ProfileSet& set, Kind kind);
std::optional<PerturbationSpec> SpecFor(const ProfileSet& set, Aspect aspect);

// Accepts "typo", "jumble", "antonym", "production" (all three, returned in
// that order), "targeted", or "Kind[@degree]".
std::vector<ProfileSet> ResolveProfiles(std::string_view name);

}  // namespace deltascore::perturb

#endif  // DELTASCORE_PERTURB_PROFILES_H_
