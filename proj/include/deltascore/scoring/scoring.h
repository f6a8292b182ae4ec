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

// Token-mean conditional log-likelihood, log p(s|c) = (1/m) sum_t
// log p(s_t | s_<t, c), under pluggable language-model backends. Natural log
// throughout.

#ifndef DELTASCORE_SCORING_SCORING_H_
#define DELTASCORE_SCORING_SCORING_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltascore/error.h"

namespace deltascore::scoring {

// Where the condition enters the model. Decoder-only models see c followed by
// s in one sequence; encoder-decoder models read c through the encoder. Both
// score only the story tokens, so the arithmetic is shared.
enum class ConditionChannel { kConcatenated, kEncoder };

struct StoryTokenScores {
  std::vector<double> logprobs;  // One per scored story token.
  bool truncated = false;        // Backend capped the sequence.
};

class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string id() const = 0;
  virtual ConditionChannel condition_channel() const {
    return ConditionChannel::kConcatenated;
  }

  // Natural-log probabilities of each story token given the condition and the
  // preceding story tokens. Must be safe to call concurrently.
  virtual StoryTokenScores ScoreStoryTokens(std::string_view condition,
                                            std::string_view story) const = 0;
};

struct TokenLogLik {
  std::vector<double> story_token_logprobs;
  double mean_logprob = 0.0;
  std::size_t token_count = 0;
  std::string backend_id;
  bool condition_included = false;
  bool truncated = false;
};

double MeanOf(std::span<const double> values);

// Errors: InvalidInput for a blank story; EmptyScoreError when the backend
// scores zero story tokens; ScoringError (with the cause) for any backend
// failure or an invalid log-probability.
TokenLogLik ScoreConditional(const Backend& backend, std::string_view condition,
                             std::string_view story);

struct BatchItem {
  std::string condition;
  std::string story;
};

struct BatchSlot {
  std::optional<TokenLogLik> result;
  std::optional<ErrorCode> error_code;
  std::string error;

  bool ok() const { return result.has_value(); }
};

// Scores every item, isolating failures per slot. Results keep input order.
// `jobs` bounds worker threads. Throws BatchError when every item failed.
std::vector<BatchSlot> ScoreBatch(const Backend& backend,
                                  std::span<const BatchItem> items,
                                  int jobs = 1);

enum class BackendKind { kNGram, kRemoteLogprob };

enum class WireShape {
  kNative,      // {model, context, continuation} -> {tokens, logprobs}
  kOpenAiEcho,  // completions with echo=true, max_tokens=0
};

struct BackendConfig {
  BackendKind kind = BackendKind::kNGram;

  // NGram.
  int order = 2;
  double smoothing = 1.0;
  std::string model_path;

  // RemoteLogprob.
  std::string endpoint;
  std::string model;
  std::string auth_env = "DELTASCORE_LOGPROB_TOKEN";
  double timeout_seconds = 60.0;
  int max_retries = 3;
  int initial_backoff_ms = 500;
  int max_in_flight = 8;
  WireShape shape = WireShape::kNative;
  ConditionChannel channel = ConditionChannel::kConcatenated;
  std::string cassette_path;
  std::string cassette_mode = "live";
};

// Throws InvalidInput when an invariant fails (order >= 1, smoothing > 0,
// timeout > 0, ...).
void Validate(const BackendConfig& config);

// NGram loads `model_path`; RemoteLogprob builds an HTTP client.
std::unique_ptr<Backend> MakeBackend(const BackendConfig& config);

}  // namespace deltascore::scoring

#endif  // DELTASCORE_SCORING_SCORING_H_
