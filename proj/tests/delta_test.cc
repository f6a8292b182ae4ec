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

#include <gtest/gtest.h>

#include <cmath>

#include "deltascore/error.h"
#include "deltascore/rng.h"
#include "test_util.h"

namespace deltascore::delta {
namespace {

using perturb::Aspect;
using perturb::Kind;
using perturb::PerturbationSpec;

ConditionedStory Story(std::string text, std::string id = "s1",
                       std::string condition = "") {
  return {std::move(id), std::move(condition), std::move(text), std::nullopt};
}

// Mean log-likelihood straight from Probability(), with the history built
// by hand; independent of ScoreStoryTokens.
double OracleMean(const scoring::NGramModel& model, const std::string& text) {
  const std::vector<std::string> words = text::TokenizeWords(text);
  std::vector<std::string> history;
  double sum = 0.0;
  for (const std::string& w : words) {
    sum += std::log(model.Probability(history, w));
    history.push_back(w);
  }
  return sum / static_cast<double>(words.size());
}

std::uint64_t SeedGiving(const std::string& text, const std::string& want) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (perturb::PerturbJumble(Story(text), 1.0, seed).text == want) {
      return seed;
    }
  }
  ADD_FAILURE() << "no seed produced " << want;
  return 0;
}

TEST(DeltaScoreTest, ToyBigramJumble) {
  const scoring::NGramModel model = testing::TrainOn({"a b", "a b"}, 2, 1.0);
  const std::uint64_t seed = SeedGiving("a b", "b a");
  const DeltaResult result =
      DeltaScore(Story("a b"), {Kind::kJumble, 1.0, seed}, model);
  const double expected = (std::log(0.5) + std::log(0.5)) / 2 -
                          (std::log(1.0 / 6) + std::log(1.0 / 6)) / 2;
  EXPECT_NEAR(result.delta, expected, 1e-12);
  EXPECT_NEAR(result.delta, std::log(3.0), 1e-12);
  EXPECT_EQ(result.delta, result.logp_original - result.logp_perturbed);
  EXPECT_FALSE(result.flags.noop);
}

TEST(DeltaScoreTest, NoopIsExactlyZero) {
  const scoring::NGramModel model = testing::TrainOn({"a b", "a b"}, 2, 1.0);
  const DeltaResult result =
      DeltaScore(Story("a b"), {Kind::kJumble, 0.0, 1}, model);
  EXPECT_TRUE(result.flags.noop);
  EXPECT_EQ(result.delta, 0.0);
  EXPECT_EQ(result.logp_perturbed, result.logp_original);
  EXPECT_EQ(DeltaBetween(Story("a b"), "a b", model).delta, 0.0);
}

TEST(DeltaScoreTest, Antisymmetry) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  testing::SentenceGrammar grammar(5);
  for (int i = 0; i < 50; ++i) {
    const std::string s = grammar.Sentence();
    const std::string t = grammar.Sentence();
    const double forward = DeltaBetween(Story(s), t, backend).delta;
    const double backward = DeltaBetween(Story(t), s, backend).delta;
    EXPECT_EQ(forward, -backward);
  }
}

TEST(DeltaScoreTest, SignSurvivesLogBaseChange) {
  testing::ScriptedBackend natural(testing::HashedLogprob);
  testing::ScriptedBackend doubled(testing::HashedLogprob, 2.0);
  testing::SentenceGrammar grammar(8);
  for (int i = 0; i < 30; ++i) {
    const ConditionedStory story = Story(grammar.Sentence(), "x");
    const PerturbationSpec spec{Kind::kTypo, 0.5, static_cast<std::uint64_t>(i)};
    const double a = DeltaScore(story, spec, natural).delta;
    const double b = DeltaScore(story, spec, doubled).delta;
    EXPECT_EQ(std::signbit(a), std::signbit(b));
    EXPECT_NEAR(b, 2 * a, 1e-12);
  }
}

TEST(DeltaScoreTest, FluentStoryIsHurtMoreThanJumbledCopy) {
  testing::SentenceGrammar grammar(11);
  std::vector<std::string> corpus;
  for (int i = 0; i < 500; ++i) corpus.push_back(grammar.Sentence());
  const scoring::NGramModel model = testing::TrainOn(corpus, 2, 0.1);
  const std::string fluent = grammar.Sentence();
  const std::string jumbled =
      perturb::PerturbJumble(Story(fluent), 1.0, 4).text;
  const PerturbationSpec spec{Kind::kJumble, 0.9, 21};
  const double fluent_delta = DeltaScore(Story(fluent), spec, model).delta;
  const double jumbled_delta = DeltaScore(Story(jumbled), spec, model).delta;
  EXPECT_GT(fluent_delta, 0.0);
  EXPECT_GT(fluent_delta, jumbled_delta);
}

TEST(DeltaScoreTest, DegenerateIsFlaggedWithNaN) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  const perturb::WordSet all = {"a", "b"};
  perturb::PerturbationContext context;
  context.relevant_words = &all;
  const DeltaResult result =
      DeltaScore(Story("a b"), {Kind::kRmRelWords, 1.0, 0}, backend, context);
  EXPECT_TRUE(result.flags.degenerate);
  EXPECT_TRUE(std::isnan(result.delta));
  EXPECT_TRUE(std::isnan(result.logp_perturbed));
  EXPECT_FALSE(std::isnan(result.logp_original));
}

TEST(DeltaScoreTest, ErrorsCarryStoryContext) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  try {
    DeltaScore(Story("a b", "story-9"), {Kind::kAntonym, 1.0, 0}, backend);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
    EXPECT_NE(std::string(e.what()).find("story-9"), std::string::npos);
  }
}

TEST(EvaluateAspectsTest, OneResultPerProfileSharingTheOriginal) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  const perturb::ProfileSet set =
      perturb::UniformProfileSet({Kind::kJumble, 0.9, 0});
  const std::vector<DeltaResult> results = EvaluateAspects(
      Story("one two three four five six ."), set, backend, {}, {3, 1});
  ASSERT_EQ(results.size(), 5u);
  for (std::size_t i = 0; i < results.size(); ++i) {
    EXPECT_EQ(results[i].aspect, perturb::kAllAspects[i]);
    EXPECT_EQ(results[i].delta, results[0].delta);
    EXPECT_EQ(results[i].logp_original, results[0].logp_original);
    EXPECT_EQ(results[i].spec.seed,
              DeriveSeed(3, "s1", "Jumble", 0));
  }
}

TEST(EvaluateAspectsTest, ProductionSetsMatchIndependentRecomputation) {
  testing::SentenceGrammar grammar(23);
  std::vector<std::string> corpus;
  for (int i = 0; i < 300; ++i) corpus.push_back(grammar.Sentence());
  const scoring::NGramModel model = testing::TrainOn(corpus, 2, 0.5);
  perturb::AntonymLexicon lexicon;
  lexicon.Add("happy", {"sad"});
  lexicon.Add("old", {"young"});
  lexicon.Add("quiet", {"loud"});
  perturb::PerturbationContext context;
  context.antonyms = &lexicon;
  const ConditionedStory story =
      Story("the happy dog found the old cat near the river . the quiet girl "
            "helped the tired baker behind the house .",
            "fixture");
  const double original = OracleMean(model, story.story);
  for (const perturb::ProfileSet& set : perturb::DefaultProfiles().production) {
    const std::vector<DeltaResult> results =
        EvaluateAspects(story, set, model, context, {77, 1});
    const PerturbationSpec base = set.profiles[0].spec;
    PerturbationSpec seeded = base;
    seeded.seed = DeriveSeed(77, "fixture", perturb::KindName(base.kind));
    const std::string perturbed =
        perturb::Perturb(story, seeded, context).text;
    const double expected = original - OracleMean(model, perturbed);
    ASSERT_EQ(results.size(), 5u);
    EXPECT_NEAR(results[0].delta, expected, 1e-12) << set.name;
    EXPECT_GT(results[0].delta, 0.0) << set.name;
  }
}

TEST(EvaluateAspectsTest, ReplicatesAverageIndependentSeeds) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  const ConditionedStory story = Story("alpha beta gamma delta epsilon");
  const perturb::ProfileSet set =
      perturb::UniformProfileSet({Kind::kTypo, 0.6, 0});
  const std::vector<DeltaResult> results =
      EvaluateAspects(story, set, backend, {}, {5, 3});
  double sum = 0.0;
  for (std::uint64_t r = 0; r < 3; ++r) {
    sum += DeltaScore(story, {Kind::kTypo, 0.6, DeriveSeed(5, "s1", "Typo", r)},
                      backend)
               .logp_perturbed;
  }
  EXPECT_EQ(results[0].replicates, 3);
  EXPECT_NEAR(results[0].logp_perturbed, sum / 3, 1e-12);
  EXPECT_EQ(results[0].delta,
            results[0].logp_original - results[0].logp_perturbed);
}

TEST(EvaluateCorpusTest, ParallelMatchesSerialAndKeepsOrder) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  testing::SentenceGrammar grammar(2);
  std::vector<ConditionedStory> stories;
  for (int i = 0; i < 25; ++i) {
    stories.push_back(Story(grammar.Story(2), "id" + std::to_string(i)));
  }
  const perturb::ProfileSet set =
      perturb::UniformProfileSet({Kind::kJumble, 0.9, 0});
  const auto serial = EvaluateCorpus(stories, set, backend, {}, {1, 1}, 1);
  const auto parallel = EvaluateCorpus(stories, set, backend, {}, {1, 1}, 6);
  ASSERT_EQ(serial.size(), 125u);
  ASSERT_EQ(parallel.size(), serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].id, "id" + std::to_string(i / 5));
    EXPECT_EQ(serial[i].id, parallel[i].id);
    EXPECT_EQ(serial[i].delta, parallel[i].delta);
  }
}

TEST(EvaluateCorpusTest, FirstFailingStoryIsReported) {
  testing::ScriptedBackend backend(testing::HashedLogprob);
  std::vector<ConditionedStory> stories = {Story("fine story", "ok"),
                                           Story("   ", "blank-1"),
                                           Story("   ", "blank-2")};
  try {
    EvaluateCorpus(stories, perturb::UniformProfileSet({Kind::kJumble, 1, 0}),
                   backend, {}, {}, 3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("blank-1"), std::string::npos)
        << e.what();
  }
}

}  // namespace
}  // namespace deltascore::delta
