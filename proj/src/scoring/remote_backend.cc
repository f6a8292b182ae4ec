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

#include "deltascore/scoring/remote_backend.h"

#include <cstdlib>
#include <mutex>

#include "deltascore/net/cassette.h"
#include "deltascore/net/http_transport.h"
#include "json.hpp"

namespace deltascore::scoring {

using nlohmann::ordered_json;

namespace {

BackendConfig Validated(BackendConfig config) {
  config.kind = BackendKind::kRemoteLogprob;
  Validate(config);
  return config;
}

std::string EchoPrompt(std::string_view condition, std::string_view story) {
  if (condition.empty()) return std::string(story);
  return std::string(condition) + " " + std::string(story);
}

}  // namespace

std::string BuildLogprobRequest(const BackendConfig& config,
                                std::string_view condition,
                                std::string_view story) {
  ordered_json body;
  body["model"] = config.model;
  if (config.shape == WireShape::kOpenAiEcho) {
    body["prompt"] = EchoPrompt(condition, story);
    body["max_tokens"] = 0;
    body["echo"] = true;
    body["logprobs"] = 0;
    body["temperature"] = 0;
    return body.dump();
  }
  body["context"] = std::string(condition);
  body["continuation"] = std::string(story);
  if (config.channel == ConditionChannel::kEncoder) {
    body["condition_channel"] = "encoder";
  }
  return body.dump();
}

StoryTokenScores ParseLogprobResponse(const BackendConfig& config,
                                      std::string_view condition,
                                      std::string_view response_body) {
  StoryTokenScores scores;
  try {
    const auto parsed = ordered_json::parse(response_body);
    if (config.shape == WireShape::kOpenAiEcho) {
      const auto& logprobs = parsed.at("choices").at(0).at("logprobs");
      const auto& values = logprobs.at("token_logprobs");
      const auto& offsets = logprobs.at("text_offset");
      if (values.size() != offsets.size()) {
        throw Error(ErrorCode::kScoringError,
                    "token_logprobs and text_offset lengths differ");
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (offsets[i].get<std::size_t>() < condition.size()) continue;
        if (values[i].is_null()) continue;
        scores.logprobs.push_back(values[i].get<double>());
      }
      return scores;
    }
    const auto& tokens = parsed.at("tokens");
    const auto& values = parsed.at("logprobs");
    if (tokens.size() != values.size()) {
      throw Error(ErrorCode::kScoringError,
                  "tokens and logprobs lengths differ");
    }
    for (const auto& v : values) scores.logprobs.push_back(v.get<double>());
    if (parsed.contains("truncated")) {
      scores.truncated = parsed.at("truncated").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kScoringError,
                std::string("malformed logprob response: ") + e.what());
  }
  return scores;
}

RemoteLogprobBackend::RemoteLogprobBackend(BackendConfig config,
                                           std::shared_ptr<net::Transport> live)
    : config_(Validated(std::move(config))),
      in_flight_(config_.max_in_flight) {
  const net::CassetteMode mode = *net::ParseCassetteMode(config_.cassette_mode);
  if (!live && mode != net::CassetteMode::kReplay) {
    live = std::make_shared<net::HttpTransport>();
  }
  if (mode == net::CassetteMode::kLive) {
    transport_ = std::move(live);
  } else {
    transport_ = std::make_shared<net::RecordReplayTransport>(
        std::move(live), config_.cassette_path, mode);
  }
}

std::string RemoteLogprobBackend::id() const {
  return "remote(" + config_.model + ")";
}

StoryTokenScores RemoteLogprobBackend::ScoreStoryTokens(
    std::string_view condition, std::string_view story) const {
  net::HttpRequest request;
  request.url = config_.endpoint;
  request.body = BuildLogprobRequest(config_, condition, story);
  request.timeout_seconds = config_.timeout_seconds;
  request.headers.emplace_back("Content-Type", "application/json");
  if (const char* token = std::getenv(config_.auth_env.c_str())) {
    request.headers.emplace_back("Authorization",
                                 std::string("Bearer ") + token);
  }

  net::HttpResponse response;
  try {
    std::lock_guard<net::InFlightLimit> permit(in_flight_);
    response = net::SendWithRetry(
        *transport_, request,
        {config_.max_retries,
         std::chrono::milliseconds(config_.initial_backoff_ms)});
  } catch (const net::TransportFailure& e) {
    throw Error(ErrorCode::kScoringError,
                std::string("retries exhausted: ") + e.what());
  }
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::kScoringError,
                "HTTP " + std::to_string(response.status) + ": " +
                    response.body.substr(0, 300));
  }
  return ParseLogprobResponse(config_, condition, response.body);
}

}  // namespace deltascore::scoring
