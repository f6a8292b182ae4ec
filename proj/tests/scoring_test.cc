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

#include "deltascore/scoring/scoring.h"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "deltascore/error.h"
#include "deltascore/scoring/remote_backend.h"
#include "json.hpp"
#include "test_util.h"

namespace deltascore::scoring {
namespace {

using testing::ScriptedBackend;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidInput;
}

class FixedBackend final : public Backend {
 public:
  explicit FixedBackend(StoryTokenScores scores) : scores_(std::move(scores)) {}
  std::string id() const override { return "fixed"; }
  StoryTokenScores ScoreStoryTokens(std::string_view,
                                    std::string_view) const override {
    return scores_;
  }

 private:
  StoryTokenScores scores_;
};

class ThrowingBackend final : public Backend {
 public:
  std::string id() const override { return "throwing"; }
  StoryTokenScores ScoreStoryTokens(std::string_view,
                                    std::string_view story) const override {
    if (story == "boom") throw std::runtime_error("model crashed");
    return {{-1.0}, false};
  }
};

TEST(ScoreConditionalTest, MeanOfStoryTokens) {
  FixedBackend backend({{-1.0, -2.0, -3.0}, true});
  const TokenLogLik result = ScoreConditional(backend, "cond", "x y z");
  EXPECT_DOUBLE_EQ(result.mean_logprob, -2.0);
  EXPECT_EQ(result.token_count, 3u);
  EXPECT_EQ(result.backend_id, "fixed");
  EXPECT_TRUE(result.condition_included);
  EXPECT_TRUE(result.truncated);
  EXPECT_FALSE(ScoreConditional(backend, "", "x").condition_included);
}

TEST(ScoreConditionalTest, Errors) {
  FixedBackend backend({{-1.0}, false});
  EXPECT_EQ(CodeOf([&] { ScoreConditional(backend, "c", "  "); }),
            ErrorCode::kInvalidInput);
  FixedBackend empty({{}, false});
  EXPECT_EQ(CodeOf([&] { ScoreConditional(empty, "c", "story"); }),
            ErrorCode::kEmptyScore);
  FixedBackend positive({{0.5}, false});
  EXPECT_EQ(CodeOf([&] { ScoreConditional(positive, "c", "story"); }),
            ErrorCode::kScoringError);
  FixedBackend nan({{std::nan("")}, false});
  EXPECT_EQ(CodeOf([&] { ScoreConditional(nan, "c", "story"); }),
            ErrorCode::kScoringError);
  ThrowingBackend throwing;
  EXPECT_EQ(CodeOf([&] { ScoreConditional(throwing, "c", "boom"); }),
            ErrorCode::kScoringError);
}

TEST(ScoreConditionalTest, BaseChangeKeepsOrdering) {
  ScriptedBackend natural(testing::HashedLogprob);
  ScriptedBackend doubled(testing::HashedLogprob, 2.0);
  const double a = ScoreConditional(natural, "", "one two three").mean_logprob;
  const double b = ScoreConditional(natural, "", "three two one x").mean_logprob;
  const double a2 = ScoreConditional(doubled, "", "one two three").mean_logprob;
  const double b2 =
      ScoreConditional(doubled, "", "three two one x").mean_logprob;
  EXPECT_EQ(a < b, a2 < b2);
  EXPECT_DOUBLE_EQ(a2, 2 * a);
}

TEST(ScoreBatchTest, KeepsOrderAndIsolatesFailures) {
  ThrowingBackend backend;
  const std::vector<BatchItem> items = {
      {"", "ok"}, {"", "boom"}, {"", "ok again"}, {"", " "}};
  for (int jobs : {1, 3}) {
    const std::vector<BatchSlot> slots = ScoreBatch(backend, items, jobs);
    ASSERT_EQ(slots.size(), 4u);
    EXPECT_TRUE(slots[0].ok());
    EXPECT_FALSE(slots[1].ok());
    EXPECT_EQ(slots[1].error_code, ErrorCode::kScoringError);
    EXPECT_TRUE(slots[2].ok());
    EXPECT_EQ(slots[3].error_code, ErrorCode::kInvalidInput);
  }
}

TEST(ScoreBatchTest, AllFailedIsBatchError) {
  ThrowingBackend backend;
  const std::vector<BatchItem> items = {{"", "boom"}, {"", "boom"}};
  EXPECT_EQ(CodeOf([&] { ScoreBatch(backend, items, 2); }),
            ErrorCode::kBatchError);
}

TEST(ScoreBatchTest, ParallelMatchesSerial) {
  const scoring::NGramModel model =
      testing::TrainOn({"a b c", "b c a", "c a b ."}, 2, 0.5);
  std::vector<BatchItem> items;
  testing::SentenceGrammar grammar(3);
  for (int i = 0; i < 40; ++i) items.push_back({"a", grammar.Sentence()});
  const auto serial = ScoreBatch(model, items, 1);
  const auto parallel = ScoreBatch(model, items, 8);
  for (std::size_t i = 0; i < items.size(); ++i) {
    EXPECT_EQ(serial[i].result->mean_logprob,
              parallel[i].result->mean_logprob);
  }
}

BackendConfig RemoteConfig(std::string endpoint) {
  BackendConfig config;
  config.kind = BackendKind::kRemoteLogprob;
  config.endpoint = std::move(endpoint);
  config.model = "lm";
  config.initial_backoff_ms = 1;
  return config;
}

TEST(RemoteBackendTest, NativeRequestShape) {
  BackendConfig config = RemoteConfig("http://lm.test/v1/logprobs");
  auto body = nlohmann::json::parse(
      BuildLogprobRequest(config, "A title", "the story"));
  EXPECT_EQ(body["model"], "lm");
  EXPECT_EQ(body["context"], "A title");
  EXPECT_EQ(body["continuation"], "the story");
  EXPECT_FALSE(body.contains("condition_channel"));

  config.channel = ConditionChannel::kEncoder;
  body = nlohmann::json::parse(BuildLogprobRequest(config, "c", "s"));
  EXPECT_EQ(body["condition_channel"], "encoder");
}

TEST(RemoteBackendTest, NativeResponseParsing) {
  const BackendConfig config = RemoteConfig("http://lm.test/v1/logprobs");
  const StoryTokenScores scores = ParseLogprobResponse(
      config, "c",
      R"({"tokens":["a","b"],"logprobs":[-0.5,-1.5],"truncated":true})");
  EXPECT_EQ(scores.logprobs, (std::vector<double>{-0.5, -1.5}));
  EXPECT_TRUE(scores.truncated);
  EXPECT_THROW(ParseLogprobResponse(config, "c",
                                    R"({"tokens":["a"],"logprobs":[]})"),
               Error);
}

TEST(RemoteBackendTest, OpenAiEchoDropsConditionTokens) {
  BackendConfig config = RemoteConfig("http://lm.test/v1/completions");
  config.shape = WireShape::kOpenAiEcho;
  const auto body =
      nlohmann::json::parse(BuildLogprobRequest(config, "Title", "a b"));
  EXPECT_EQ(body["prompt"], "Title a b");
  EXPECT_EQ(body["max_tokens"], 0);
  EXPECT_EQ(body["echo"], true);

  // "Title" occupies offsets 0..4; story tokens start at 5.
  const std::string response = R"({"choices":[{"logprobs":{
      "tokens":["Title"," a"," b"],
      "token_logprobs":[null,-1.0,-2.0],
      "text_offset":[0,5,7]}}]})";
  EXPECT_EQ(ParseLogprobResponse(config, "Title", response).logprobs,
            (std::vector<double>{-1.0, -2.0}));
  const std::string unconditioned = R"({"choices":[{"logprobs":{
      "tokens":["a"," b"],"token_logprobs":[null,-2.0],
      "text_offset":[0,1]}}]})";
  EXPECT_EQ(ParseLogprobResponse(config, "", unconditioned).logprobs,
            (std::vector<double>{-2.0}));
}

TEST(RemoteBackendTest, ScoresThroughServerAndReplays) {
  const auto dir = testing::MakeTempDir("remote");
  BackendConfig config;
  double live_mean = 0.0;
  {
    testing::MockServer server(/*fail_first=*/1);
    config = RemoteConfig(server.Url("/v1/logprobs"));
    config.cassette_path = (dir / "lm.jsonl").string();
    config.cassette_mode = "record";
    const auto backend = MakeBackend(config);
    EXPECT_EQ(backend->id(), "remote(lm)");
    live_mean = ScoreConditional(*backend, "c", "x y").mean_logprob;
  }
  EXPECT_DOUBLE_EQ(live_mean, (testing::HashedLogprob("x", 0) +
                               testing::HashedLogprob("y", 1)) /
                                  2);
  config.cassette_mode = "replay";
  const auto replay = MakeBackend(config);
  EXPECT_EQ(ScoreConditional(*replay, "c", "x y").mean_logprob, live_mean);
  EXPECT_EQ(CodeOf([&] { ScoreConditional(*replay, "c", "not recorded"); }),
            ErrorCode::kScoringError);
}

TEST(BackendConfigTest, Validation) {
  BackendConfig config;
  config.order = 0;
  EXPECT_THROW(Validate(config), Error);
  config = BackendConfig{};
  config.smoothing = 0;
  EXPECT_THROW(Validate(config), Error);
  config = RemoteConfig("");
  EXPECT_THROW(Validate(config), Error);
  config = RemoteConfig("http://x/y");
  config.cassette_mode = "sometimes";
  EXPECT_THROW(Validate(config), Error);
  config = BackendConfig{};
  config.model_path = "/nonexistent/model.lm";
  EXPECT_THROW(MakeBackend(config), Error);
}

}  // namespace
}  // namespace deltascore::scoring
