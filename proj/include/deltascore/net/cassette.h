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

// Record/replay store for HTTP exchanges. A cassette is a JSON Lines file of
// {"method", "path", "body", "status", "response"} entries; requests match on
// method, URL path and exact body bytes, so host changes do not invalidate a
// recording.

#ifndef DELTASCORE_NET_CASSETTE_H_
#define DELTASCORE_NET_CASSETTE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "deltascore/net/transport.h"

namespace deltascore::net {

enum class CassetteMode {
  kLive,    // Never touch the cassette.
  kRecord,  // Serve recorded entries; send and append anything new.
  kReplay,  // Serve recorded entries only; a miss is a ReplayMiss error.
};

std::string_view CassetteModeName(CassetteMode mode);
std::optional<CassetteMode> ParseCassetteMode(std::string_view name);

class Cassette {
 public:
  // Loads `path`. A missing file yields an empty cassette; a malformed line
  // throws IoError with the line number.
  explicit Cassette(std::string path);

  const std::string& path() const { return path_; }
  std::size_t size() const;

  std::optional<HttpResponse> Find(const HttpRequest& request) const;

  // Appends to memory and to the file. Appends are serialized.
  void Append(const HttpRequest& request, const HttpResponse& response);

 private:
  static std::string Key(std::string_view method, std::string_view path,
                         std::string_view body);

  std::string path_;
  std::map<std::string, HttpResponse> entries_;
  mutable std::mutex mutex_;
};

class RecordReplayTransport final : public Transport {
 public:
  // `live` may be null in replay mode. Replay mode requires the cassette
  // file to exist (InvalidInput otherwise).
  RecordReplayTransport(std::shared_ptr<Transport> live,
                        const std::string& cassette_path, CassetteMode mode);

  HttpResponse Send(const HttpRequest& request) override;

  CassetteMode mode() const { return mode_; }

 private:
  std::shared_ptr<Transport> live_;
  std::unique_ptr<Cassette> cassette_;
  CassetteMode mode_;
};

}  // namespace deltascore::net

#endif  // DELTASCORE_NET_CASSETTE_H_
