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

#include "deltascore/net/transport.h"

#include <thread>

#include "deltascore/error.h"

namespace deltascore::net {

bool IsRetryableStatus(int status) { return status == 429 || status >= 500; }

HttpResponse SendWithRetry(Transport& transport, const HttpRequest& request,
                           const RetryPolicy& policy, const Sleeper& sleep) {
  auto backoff = policy.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    const bool last = attempt >= policy.max_retries;
    try {
      HttpResponse response = transport.Send(request);
      if (!IsRetryableStatus(response.status) || last) return response;
    } catch (const TransportFailure&) {
      if (last) throw;
    }
    if (sleep) {
      sleep(backoff);
    } else {
      std::this_thread::sleep_for(backoff);
    }
    backoff *= 2;
  }
}

ParsedUrl ParseUrl(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || scheme_end == 0) {
    throw Error(ErrorCode::kInvalidInput, "URL has no scheme: " + url);
  }
  const auto path_begin = url.find('/', scheme_end + 3);
  if (path_begin == std::string::npos) return {url, "/"};
  return {url.substr(0, path_begin), url.substr(path_begin)};
}

}  // namespace deltascore::net
