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

#include "deltascore/llm/client.h"

#include <cstdlib>
#include <filesystem>
#include <mutex>

#include "deltascore/error.h"
#include "deltascore/net/http_transport.h"
#include "json.hpp"

namespace deltascore::llm {

using nlohmann::ordered_json;

std::optional<ChatShape> ParseChatShape(std::string_view name) {
  if (name == "generic") return ChatShape::kGeneric;
  if (name == "openai") return ChatShape::kOpenAi;
  return std::nullopt;
}

void Validate(const ServiceConfig& config) {
  if (config.temperature < 0.0) {
    throw Error(ErrorCode::kInvalidInput, "temperature must be >= 0");
  }
  if (!(config.timeout_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "timeout must be > 0");
  }
  if (config.max_retries < 0) {
    throw Error(ErrorCode::kInvalidInput, "max retries must be >= 0");
  }
  if (config.max_in_flight < 1 ||
      config.max_in_flight > net::InFlightLimit::kMax) {
    throw Error(ErrorCode::kInvalidInput, "max in-flight must be in 1..1024");
  }
  if (config.endpoint.empty()) {
    throw Error(ErrorCode::kInvalidInput, "service endpoint is required");
  }
  if (config.mode == net::CassetteMode::kReplay &&
      !std::filesystem::exists(config.cassette_path)) {
    throw Error(ErrorCode::kInvalidInput,
                "replay mode requires an existing cassette: '" +
                    config.cassette_path + "'");
  }
}

namespace {

ServiceConfig Validated(ServiceConfig config) {
  Validate(config);
  return config;
}

}  // namespace

Client::Client(ServiceConfig config, std::shared_ptr<net::Transport> live)
    : config_(Validated(std::move(config))),
      in_flight_(config_.max_in_flight) {
  if (!live && config_.mode != net::CassetteMode::kReplay) {
    live = std::make_shared<net::HttpTransport>();
  }
  if (config_.mode == net::CassetteMode::kLive) {
    transport_ = std::move(live);
  } else {
    transport_ = std::make_shared<net::RecordReplayTransport>(
        std::move(live), config_.cassette_path, config_.mode);
  }
}

std::string Client::Complete(std::string_view prompt) const {
  ordered_json body;
  body["model"] = config_.model;
  body["messages"] = ordered_json::array(
      {ordered_json{{"role", "user"}, {"content", std::string(prompt)}}});
  body["temperature"] = config_.temperature;

  net::HttpRequest request;
  request.url = config_.endpoint;
  request.body = body.dump();
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
    throw Error(ErrorCode::kServiceError,
                std::string("retries exhausted: ") + e.what());
  }

  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::kServiceError,
                "HTTP " + std::to_string(response.status) + ": " +
                    response.body.substr(0, 300));
  }
  try {
    const auto parsed = ordered_json::parse(response.body);
    if (config_.shape == ChatShape::kOpenAi) {
      return parsed.at("choices").at(0).at("message").at("content")
          .get<std::string>();
    }
    return parsed.at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kServiceError,
                std::string("malformed service response: ") + e.what());
  }
}

}  // namespace deltascore::llm
