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

#ifndef DELTASCORE_SCORING_REMOTE_BACKEND_H_
#define DELTASCORE_SCORING_REMOTE_BACKEND_H_

#include <memory>
#include <string>
#include <string_view>

#include "deltascore/net/transport.h"
#include "deltascore/scoring/scoring.h"

namespace deltascore::scoring {

// Builds the HTTP request body for a (condition, story) pair. Only this and
// ParseLogprobResponse know about provider shapes.
std::string BuildLogprobRequest(const BackendConfig& config,
                                std::string_view condition,
                                std::string_view story);

// Extracts the story-token log-probabilities. For the OpenAI echo shape,
// tokens starting before the end of the condition text are dropped, as are
// null entries (the first token of an unconditioned prompt has none).
StoryTokenScores ParseLogprobResponse(const BackendConfig& config,
                                      std::string_view condition,
                                      std::string_view response_body);

// Log-probability scoring through a remote model. The model scores in its own
// token space, so m is the remote token count. Concurrent calls are bounded
// by `max_in_flight`; transport errors are retried with exponential backoff.
class RemoteLogprobBackend final : public Backend {
 public:
  // `live` defaults to an HttpTransport; a cassette wraps it unless the
  // cassette mode is "live".
  explicit RemoteLogprobBackend(BackendConfig config,
                                std::shared_ptr<net::Transport> live = nullptr);

  std::string id() const override;
  ConditionChannel condition_channel() const override {
    return config_.channel;
  }
  StoryTokenScores ScoreStoryTokens(std::string_view condition,
                                    std::string_view story) const override;

 private:
  BackendConfig config_;
  std::shared_ptr<net::Transport> transport_;
  mutable net::InFlightLimit in_flight_;
};

}  // namespace deltascore::scoring

#endif  // DELTASCORE_SCORING_REMOTE_BACKEND_H_
