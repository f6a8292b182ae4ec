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

#include "deltascore/net/http_transport.h"

#include <chrono>

#include "deltascore/error.h"
#include "httplib.h"

namespace deltascore::net {

HttpResponse HttpTransport::Send(const HttpRequest& request) {
  const ParsedUrl url = ParseUrl(request.url);
  httplib::Client client(url.scheme_host_port);
  if (!client.is_valid()) {
    throw Error(ErrorCode::kInvalidInput,
                "unsupported endpoint: " + url.scheme_host_port);
  }
  const auto timeout = std::chrono::milliseconds(
      static_cast<long long>(request.timeout_seconds * 1000.0));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  for (const auto& [name, value] : request.headers) {
    headers.emplace(name, value);
  }

  httplib::Result result =
      request.method == "GET"
          ? client.Get(url.path, headers)
          : client.Post(url.path, headers, request.body, "application/json");
  if (!result) {
    throw TransportFailure(request.method + " " + request.url + ": " +
                           httplib::to_string(result.error()));
  }
  return HttpResponse{result->status, result->body};
}

}  // namespace deltascore::net
