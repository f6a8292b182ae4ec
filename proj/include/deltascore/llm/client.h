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

#ifndef DELTASCORE_LLM_CLIENT_H_
#define DELTASCORE_LLM_CLIENT_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "deltascore/net/cassette.h"
#include "deltascore/net/transport.h"

namespace deltascore::llm {

// Anything that answers an instruction prompt with text.
class TextService {
 public:
  virtual ~TextService() = default;
  virtual std::string Complete(std::string_view prompt) const = 0;
};

enum class ChatShape {
  // {model, messages, temperature} -> {content}
  kGeneric,
  // OpenAI-style chat completions: -> {choices:[{message:{content}}]}
  kOpenAi,
};

std::optional<ChatShape> ParseChatShape(std::string_view name);

struct ServiceConfig {
  std::string endpoint;
  std::string model;
  std::string auth_env = "DELTASCORE_SERVICE_TOKEN";
  double temperature = 0.0;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  int initial_backoff_ms = 500;
  int max_in_flight = 4;
  std::string cassette_path;
  net::CassetteMode mode = net::CassetteMode::kLive;
  ChatShape shape = ChatShape::kGeneric;
};

// Throws InvalidInput on a bad config (negative temperature, non-positive
// timeout, replay without a cassette file, ...).
void Validate(const ServiceConfig& config);

class Client final : public TextService {
 public:
  // `live` defaults to an HttpTransport.
  explicit Client(ServiceConfig config,
                  std::shared_ptr<net::Transport> live = nullptr);

  // Returns the service response text. Transport errors are retried with
  // exponential backoff; exhaustion is a ServiceError, a replay miss a
  // ReplayMiss.
  std::string Complete(std::string_view prompt) const override;

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
  std::shared_ptr<net::Transport> transport_;
  mutable net::InFlightLimit in_flight_;
};

}  // namespace deltascore::llm

#endif  // DELTASCORE_LLM_CLIENT_H_
