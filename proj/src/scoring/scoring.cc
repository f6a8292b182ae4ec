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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "deltascore/net/cassette.h"
#include "deltascore/scoring/ngram_model.h"
#include "deltascore/scoring/remote_backend.h"
#include "deltascore/text.h"

namespace deltascore::scoring {

double MeanOf(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

TokenLogLik ScoreConditional(const Backend& backend, std::string_view condition,
                             std::string_view story) {
  if (text::IsBlank(story)) {
    throw Error(ErrorCode::kInvalidInput, "cannot score an empty story");
  }
  StoryTokenScores scores;
  try {
    scores = backend.ScoreStoryTokens(condition, story);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyScore) throw;
    throw Error(ErrorCode::kScoringError,
                "backend " + backend.id() + " failed: " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kScoringError,
                "backend " + backend.id() + " failed: " + e.what());
  }
  if (scores.logprobs.empty()) {
    throw Error(ErrorCode::kEmptyScore,
                "backend " + backend.id() + " scored zero story tokens");
  }
  for (std::size_t i = 0; i < scores.logprobs.size(); ++i) {
    const double lp = scores.logprobs[i];
    if (!std::isfinite(lp) || lp > 0.0) {
      throw Error(ErrorCode::kScoringError,
                  "backend " + backend.id() + " returned log-probability " +
                      std::to_string(lp) + " at story token " +
                      std::to_string(i));
    }
  }
  TokenLogLik result;
  result.mean_logprob = MeanOf(scores.logprobs);
  result.token_count = scores.logprobs.size();
  result.story_token_logprobs = std::move(scores.logprobs);
  result.backend_id = backend.id();
  result.condition_included = !condition.empty();
  result.truncated = scores.truncated;
  return result;
}

std::vector<BatchSlot> ScoreBatch(const Backend& backend,
                                  std::span<const BatchItem> items, int jobs) {
  std::vector<BatchSlot> slots(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      BatchSlot& slot = slots[i];
      try {
        slot.result =
            ScoreConditional(backend, items[i].condition, items[i].story);
      } catch (const Error& e) {
        slot.error_code = e.code();
        slot.error = e.what();
      } catch (const std::exception& e) {
        slot.error_code = ErrorCode::kScoringError;
        slot.error = e.what();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(jobs, 1)), 1,
      std::max<std::size_t>(items.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (!items.empty() &&
      std::none_of(slots.begin(), slots.end(),
                   [](const BatchSlot& s) { return s.ok(); })) {
    std::string summary = "all " + std::to_string(items.size()) +
                          " batch items failed:";
    for (std::size_t i = 0; i < slots.size(); ++i) {
      summary += "\n  [" + std::to_string(i) + "] " + slots[i].error;
    }
    throw Error(ErrorCode::kBatchError, summary);
  }
  return slots;
}

void Validate(const BackendConfig& config) {
  switch (config.kind) {
    case BackendKind::kNGram:
      if (config.order < 1) {
        throw Error(ErrorCode::kInvalidInput, "n-gram order must be >= 1");
      }
      if (!(config.smoothing > 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "smoothing must be > 0");
      }
      break;
    case BackendKind::kRemoteLogprob:
      if (config.endpoint.empty()) {
        throw Error(ErrorCode::kInvalidInput, "remote endpoint is required");
      }
      if (!(config.timeout_seconds > 0.0)) {
        throw Error(ErrorCode::kInvalidInput, "timeout must be > 0");
      }
      if (config.max_retries < 0) {
        throw Error(ErrorCode::kInvalidInput, "max retries must be >= 0");
      }
      if (config.max_in_flight < 1 ||
          config.max_in_flight > net::InFlightLimit::kMax) {
        throw Error(ErrorCode::kInvalidInput,
                    "max in-flight must be in 1..1024");
      }
      if (!net::ParseCassetteMode(config.cassette_mode)) {
        throw Error(ErrorCode::kInvalidInput,
                    "unknown cassette mode: " + config.cassette_mode);
      }
      break;
  }
}

std::unique_ptr<Backend> MakeBackend(const BackendConfig& config) {
  Validate(config);
  if (config.kind == BackendKind::kNGram) {
    return std::make_unique<NGramModel>(NGramModel::Load(config.model_path));
  }
  return std::make_unique<RemoteLogprobBackend>(config);
}

}  // namespace deltascore::scoring
