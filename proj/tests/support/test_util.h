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

// Shared fixtures for the unit and acceptance tests.

#ifndef DELTASCORE_TESTS_SUPPORT_TEST_UTIL_H_
#define DELTASCORE_TESTS_SUPPORT_TEST_UTIL_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "deltascore/llm/client.h"
#include "deltascore/rng.h"
#include "deltascore/scoring/ngram_model.h"
#include "deltascore/scoring/scoring.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace deltascore::testing {

// Fresh empty directory under the system temp dir.
std::filesystem::path MakeTempDir(std::string_view tag);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Random sentences from a small fixed-order grammar:
//   the ADJ NOUN VERB the ADJ NOUN PREP the NOUN .
// optionally with an adverb after the verb. Every sentence has at least 11
// tokens and a strongly preferred word order.
class SentenceGrammar {
 public:
  explicit SentenceGrammar(std::uint64_t seed) : rng_(seed) {}

  std::vector<std::string> SentenceTokens();
  std::string Sentence();
  // `sentences` sentences joined by spaces.
  std::string Story(int sentences);

 private:
  const std::string& Pick(const std::vector<std::string>& words);

  SeededRng rng_;
};

// One dataset line with every aspect rated `rating` by three annotators.
// A rating of 0 leaves the "ratings" field out.
std::string DatasetLine(std::string_view id, std::string_view condition,
                        std::string_view story, int rating);

struct LadderStory {
  std::string id;
  std::string text;
  int quality = 0;  // 5 minus the number of corruption passes.
};

// `count` grammar stories of five blocks, each block `block_sentences`
// sentences long. Story i gets k = i % 5 corruption passes; pass j shuffles
// every sentence of block j with Jumble@1.0.
std::vector<LadderStory> QualityLadder(int count, std::uint64_t seed,
                                       int block_sentences = 1);

// Trains on whitespace-tokenized lines.
scoring::NGramModel TrainOn(const std::vector<std::string>& lines, int order,
                            double alpha);

// Scores each story token with `logprob(token, position)` times `scale`.
class ScriptedBackend final : public scoring::Backend {
 public:
  using Fn = std::function<double(std::string_view token, std::size_t pos)>;

  explicit ScriptedBackend(Fn fn, double scale = 1.0)
      : fn_(std::move(fn)), scale_(scale) {}

  std::string id() const override { return "scripted"; }
  scoring::StoryTokenScores ScoreStoryTokens(
      std::string_view condition, std::string_view story) const override;

 private:
  Fn fn_;
  double scale_;
};

// A deterministic log-probability depending on the token text only.
double HashedLogprob(std::string_view token, std::size_t pos);

// Answers from a fixed table, or with `fallback(prompt)`.
class ScriptedService final : public llm::TextService {
 public:
  using Fn = std::function<std::string(std::string_view prompt)>;

  explicit ScriptedService(Fn fallback) : fallback_(std::move(fallback)) {}

  std::string Complete(std::string_view prompt) const override;
  int calls() const { return calls_.load(); }

 private:
  Fn fallback_;
  mutable std::atomic<int> calls_{0};
};

// The {story} slot of a rendered service prompt.
std::string StoryFromPrompt(std::string_view prompt);

// Local HTTP server that imitates both remote services:
//   POST /v1/logprobs  native logprob shape, HashedLogprob per word
//   POST /v1/chat      generic chat shape; a Commonsense or BlanderNarrative
//                      prompt is answered with a rewritten story, a
//                      RelevantWords prompt with the story's first two words
// The first `fail_first` requests get a 503.
class MockServer {
 public:
  explicit MockServer(int fail_first = 0);
  ~MockServer();

  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  std::string Url(std::string_view path) const;
  int requests() const { return requests_.load(); }

 private:
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  std::atomic<int> fail_first_;
};

// Rewrites a story deterministically (what the mock service answers).
std::string RewriteStory(std::string_view story);

}  // namespace deltascore::testing

#endif  // DELTASCORE_TESTS_SUPPORT_TEST_UTIL_H_
