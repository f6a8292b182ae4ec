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

// Hand-worked additive-smoothing arithmetic. Toy corpus {"a b", "a b"},
// order 2, alpha 1: vocabulary {a, b, <unk>, </s>} so V = 4; every seen
// history (<s>, a, b) has count 2, giving p = 3/6 for a seen bigram and 1/6
// otherwise; an unseen history gives 1/4.

#include "deltascore/scoring/ngram_model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "deltascore/error.h"
#include "test_util.h"

namespace deltascore::scoring {
namespace {

constexpr double kTol = 1e-9;

NGramModel ToyBigram() { return testing::TrainOn({"a b", "a b"}, 2, 1.0); }

double Mean(std::initializer_list<double> probabilities) {
  double sum = 0.0;
  for (double p : probabilities) sum += std::log(p);
  return sum / static_cast<double>(probabilities.size());
}

double MeanLogLik(const Backend& backend, std::string_view condition,
                  std::string_view story) {
  const StoryTokenScores scores = backend.ScoreStoryTokens(condition, story);
  double sum = 0.0;
  for (double lp : scores.logprobs) sum += lp;
  return sum / static_cast<double>(scores.logprobs.size());
}

TEST(NGramModelTest, ToyVocabularyAndCounts) {
  const NGramModel model = ToyBigram();
  EXPECT_EQ(model.vocab_size(), 4u);
  const std::vector<std::string> bos_a = {"<s>", "a"};
  const std::vector<std::string> a_b = {"a", "b"};
  const std::vector<std::string> b_eos = {"b", "</s>"};
  const std::vector<std::string> a = {"a"};
  EXPECT_EQ(model.Count(bos_a), 2u);
  EXPECT_EQ(model.Count(a_b), 2u);
  EXPECT_EQ(model.Count(b_eos), 2u);
  EXPECT_EQ(model.Count(a), 2u);
}

TEST(NGramModelTest, ToyProbabilities) {
  const NGramModel model = ToyBigram();
  const std::vector<std::string> none;
  const std::vector<std::string> a = {"a"};
  const std::vector<std::string> b = {"b"};
  const std::vector<std::string> unk = {"zebra"};
  EXPECT_NEAR(model.Probability(none, "a"), 0.5, kTol);
  EXPECT_NEAR(model.Probability(a, "b"), 0.5, kTol);
  EXPECT_NEAR(model.Probability(b, "</s>"), 0.5, kTol);
  EXPECT_NEAR(model.Probability(none, "b"), 1.0 / 6, kTol);
  EXPECT_NEAR(model.Probability(b, "a"), 1.0 / 6, kTol);
  EXPECT_NEAR(model.Probability(none, "zebra"), 1.0 / 6, kTol);
  EXPECT_NEAR(model.Probability(unk, "a"), 0.25, kTol);
}

TEST(NGramModelTest, ProbabilitiesSumToOne) {
  const NGramModel model = ToyBigram();
  for (const std::vector<std::string>& history :
       {std::vector<std::string>{}, std::vector<std::string>{"a"},
        std::vector<std::string>{"b"}, std::vector<std::string>{"q"}}) {
    double total = 0.0;
    for (const std::string& word : model.vocabulary()) {
      total += model.Probability(history, word);
    }
    EXPECT_NEAR(total, 1.0, kTol);
  }
}

struct HandCase {
  const char* condition;
  const char* story;
  double expected;
};

TEST(NGramModelTest, HandWorkedMeanLogLikelihoods) {
  const NGramModel model = ToyBigram();
  const HandCase cases[] = {
      {"", "a b", Mean({0.5, 0.5})},
      {"", "b a", Mean({1.0 / 6, 1.0 / 6})},
      {"", "a", Mean({0.5})},
      {"", "b", Mean({1.0 / 6})},
      {"a", "b", Mean({0.5})},
      {"b", "a", Mean({1.0 / 6})},
      {"", "c", Mean({1.0 / 6})},
      {"", "c a", Mean({1.0 / 6, 0.25})},
      {"", "a b a b", Mean({0.5, 0.5, 1.0 / 6, 0.5})},
      {"a b", "a b", Mean({1.0 / 6, 0.5})},
      {"", "a a", Mean({0.5, 1.0 / 6})},
      {"z", "z z", Mean({0.25, 0.25})},
  };
  for (const HandCase& c : cases) {
    EXPECT_NEAR(MeanLogLik(model, c.condition, c.story), c.expected, kTol)
        << "condition='" << c.condition << "' story='" << c.story << "'";
  }
}

TEST(NGramModelTest, UnigramAndTrigramHandCases) {
  const NGramModel unigram = testing::TrainOn({"a"}, 1, 1.0);
  EXPECT_EQ(unigram.vocab_size(), 3u);
  EXPECT_NEAR(MeanLogLik(unigram, "", "a"), std::log(0.4), kTol);
  EXPECT_NEAR(MeanLogLik(unigram, "", "a x"), Mean({0.4, 0.2}), kTol);

  const NGramModel trigram = testing::TrainOn({"a b"}, 3, 1.0);
  EXPECT_NEAR(MeanLogLik(trigram, "", "a b"), Mean({0.4, 0.4}), kTol);
  EXPECT_NEAR(MeanLogLik(trigram, "", "b"), Mean({0.2}), kTol);
}

TEST(NGramModelTest, ReservedTokensInTextAreUnknown) {
  const NGramModel model = ToyBigram();
  EXPECT_NEAR(MeanLogLik(model, "", "<s> a"), Mean({1.0 / 6, 0.25}), kTol);
  EXPECT_NEAR(MeanLogLik(model, "", "</s>"), Mean({1.0 / 6}), kTol);
}

TEST(NGramModelTest, SmoothingAlphaChangesEstimates) {
  const NGramModel model = testing::TrainOn({"a b", "a b"}, 2, 0.5);
  const std::vector<std::string> none;
  EXPECT_NEAR(model.Probability(none, "a"), 2.5 / 4.0, kTol);
}

TEST(NGramModelTest, SerializeRoundTrip) {
  const NGramModel model =
      testing::TrainOn({"the cat sat .", "the dog sat down ."}, 3, 0.25);
  const std::string text = model.Serialize();
  EXPECT_EQ(text.rfind("ngram-model v1 order=3 alpha=0.25 vocab=", 0), 0u);
  std::istringstream in(text);
  const NGramModel parsed = NGramModel::Parse(in);
  EXPECT_TRUE(parsed == model);
  EXPECT_EQ(parsed.Serialize(), text);

  const auto dir = testing::MakeTempDir("ngram");
  model.Save((dir / "m.lm").string());
  EXPECT_TRUE(NGramModel::Load((dir / "m.lm").string()) == model);
}

TEST(NGramModelTest, ParseRejectsMalformedFiles) {
  for (const char* bad :
       {"", "ngram-model v2 order=2 alpha=1 vocab=4\n",
        "ngram-model v1 order=2 alpha=1 vocab=9\n1\ta\t2\n",
        "ngram-model v1 order=2 alpha=1 vocab=3\n1\ta\tx\n"}) {
    std::istringstream in(bad);
    EXPECT_THROW(NGramModel::Parse(in), Error) << bad;
  }
}

TEST(NGramModelTest, TrainingArguments) {
  const std::vector<std::vector<std::string>> corpus = {{"a"}};
  EXPECT_THROW(NGramModel::Train({}, 2, 1.0), Error);
  EXPECT_THROW(NGramModel::Train(corpus, 0, 1.0), Error);
  EXPECT_THROW(NGramModel::Train(corpus, 2, 0.0), Error);
}

TEST(NGramModelTest, IdDescribesModel) {
  EXPECT_EQ(ToyBigram().id(), "ngram(order=2,alpha=1,vocab=4)");
}

}  // namespace
}  // namespace deltascore::scoring
