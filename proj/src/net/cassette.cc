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

#include "deltascore/net/cassette.h"

#include <filesystem>
#include <fstream>

#include "deltascore/error.h"
#include "json.hpp"

namespace deltascore::net {

using nlohmann::ordered_json;

std::string_view CassetteModeName(CassetteMode mode) {
  switch (mode) {
    case CassetteMode::kLive:
      return "live";
    case CassetteMode::kRecord:
      return "record";
    case CassetteMode::kReplay:
      return "replay";
  }
  return "live";
}

std::optional<CassetteMode> ParseCassetteMode(std::string_view name) {
  if (name == "live") return CassetteMode::kLive;
  if (name == "record") return CassetteMode::kRecord;
  if (name == "replay") return CassetteMode::kReplay;
  return std::nullopt;
}

std::string Cassette::Key(std::string_view method, std::string_view path,
                          std::string_view body) {
  std::string key;
  key.reserve(method.size() + path.size() + body.size() + 2);
  key.append(method).push_back('\n');
  key.append(path).push_back('\n');
  key.append(body);
  return key;
}

Cassette::Cassette(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      const auto entry = ordered_json::parse(line);
      HttpResponse response{entry.at("status").get<int>(),
                            entry.at("response").get<std::string>()};
      entries_.emplace(
          Key(entry.at("method").get<std::string>(),
              entry.at("path").get<std::string>(),
              entry.at("body").get<std::string>()),
          std::move(response));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIoError, path_ + ":" +
                                           std::to_string(line_number) +
                                           ": malformed cassette entry: " +
                                           e.what());
    }
  }
}

std::size_t Cassette::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

std::optional<HttpResponse> Cassette::Find(const HttpRequest& request) const {
  const std::string key =
      Key(request.method, ParseUrl(request.url).path, request.body);
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Cassette::Append(const HttpRequest& request,
                      const HttpResponse& response) {
  const std::string path = ParseUrl(request.url).path;
  ordered_json entry;
  entry["method"] = request.method;
  entry["path"] = path;
  entry["body"] = request.body;
  entry["status"] = response.status;
  entry["response"] = response.body;

  std::lock_guard<std::mutex> lock(mutex_);
  if (!entries_.emplace(Key(request.method, path, request.body), response)
           .second) {
    return;
  }
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::kIoError, "cannot append to " + path_);
  out << entry.dump() << '\n';
}

RecordReplayTransport::RecordReplayTransport(std::shared_ptr<Transport> live,
                                             const std::string& cassette_path,
                                             CassetteMode mode)
    : live_(std::move(live)), mode_(mode) {
  if (mode_ == CassetteMode::kLive) {
    if (!live_) {
      throw Error(ErrorCode::kInvalidInput, "live mode needs a transport");
    }
    return;
  }
  if (cassette_path.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                std::string(CassetteModeName(mode_)) +
                    " mode needs a cassette path");
  }
  if (mode_ == CassetteMode::kReplay &&
      !std::filesystem::exists(cassette_path)) {
    throw Error(ErrorCode::kInvalidInput,
                "replay cassette not found: " + cassette_path);
  }
  if (mode_ == CassetteMode::kRecord && !live_) {
    throw Error(ErrorCode::kInvalidInput, "record mode needs a transport");
  }
  cassette_ = std::make_unique<Cassette>(cassette_path);
}

HttpResponse RecordReplayTransport::Send(const HttpRequest& request) {
  if (mode_ == CassetteMode::kLive) return live_->Send(request);
  if (auto hit = cassette_->Find(request)) return *hit;
  if (mode_ == CassetteMode::kReplay) {
    throw Error(ErrorCode::kReplayMiss,
                "no cassette entry in " + cassette_->path() + " for " +
                    ParseUrl(request.url).path + " body " +
                    request.body.substr(0, 200));
  }
  HttpResponse response = live_->Send(request);
  if (response.status >= 200 && response.status < 300) {
    cassette_->Append(request, response);
  }
  return response;
}

}  // namespace deltascore::net
