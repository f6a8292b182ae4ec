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

#include <gtest/gtest.h>

#include "deltascore/error.h"

namespace deltascore::perturb {
namespace {

TEST(ProfilesTest, ProductionSetsCoverEveryAspect) {
  const DefaultProfileSets sets = DefaultProfiles();
  ASSERT_EQ(sets.production.size(), 3u);
  const std::vector<std::string> names = {"Typo@0.4", "Jumble@0.9",
                                          "Antonym@0.8"};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sets.production[i].name, names[i]);
    EXPECT_EQ(sets.production[i].profiles.size(), 5u);
    EXPECT_NO_THROW(Validate(sets.production[i]));
  }
}

TEST(ProfilesTest, TargetedSetPairsEachAspectWithItsPerturbation) {
  const ProfileSet targeted = DefaultProfiles().aspect_targeted;
  EXPECT_NO_THROW(Validate(targeted));
  EXPECT_EQ(SpecFor(targeted, Aspect::kFluency)->kind, Kind::kSubjVerbDis);
  EXPECT_EQ(SpecFor(targeted, Aspect::kCoherence)->kind, Kind::kSentReorder);
  EXPECT_EQ(SpecFor(targeted, Aspect::kRelatedness)->kind, Kind::kRmRelWords);
  EXPECT_EQ(SpecFor(targeted, Aspect::kLogicality)->kind, Kind::kCommonsense);
  EXPECT_EQ(SpecFor(targeted, Aspect::kInterestingness)->kind,
            Kind::kBlanderNarrative);
  EXPECT_EQ(AspectOf(targeted, Kind::kSentReorder), Aspect::kCoherence);
  EXPECT_FALSE(AspectOf(targeted, Kind::kTypo).has_value());
}

TEST(ProfilesTest, TargetAspects) {
  EXPECT_EQ(TargetAspect(Kind::kTypo), Aspect::kFluency);
  EXPECT_EQ(TargetAspect(Kind::kJumble), Aspect::kCoherence);
  EXPECT_EQ(TargetAspect(Kind::kStoryReplace), Aspect::kRelatedness);
  EXPECT_EQ(TargetAspect(Kind::kAntonym), Aspect::kLogicality);
  EXPECT_EQ(TargetAspect(Kind::kBlanderNarrative), Aspect::kInterestingness);
}

TEST(ProfilesTest, RepeatedAspectIsRejected) {
  ProfileSet set{"dup",
                 {{Aspect::kFluency, {Kind::kTypo, 0.4, 0}},
                  {Aspect::kFluency, {Kind::kJumble, 0.9, 0}}}};
  EXPECT_THROW(Validate(set), Error);
}

TEST(ProfilesTest, ResolveByName) {
  EXPECT_EQ(ResolveProfiles("production").size(), 3u);
  EXPECT_EQ(ResolveProfiles("targeted")[0].name, "targeted");
  EXPECT_EQ(ResolveProfiles("typo")[0].name, "Typo@0.4");
  EXPECT_EQ(ResolveProfiles("jumble@0.5")[0].profiles[0].spec.degree, 0.5);
  EXPECT_THROW(ResolveProfiles("jumble@2"), Error);
  EXPECT_THROW(ResolveProfiles("jumble@x"), Error);
  EXPECT_THROW(ResolveProfiles("nothing"), Error);
}

}  // namespace
}  // namespace deltascore::perturb
