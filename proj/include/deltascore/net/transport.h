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

#ifndef DELTASCORE_NET_TRANSPORT_H_
#define DELTASCORE_NET_TRANSPORT_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deltascore::net {

struct HttpRequest {
  std::string method = "POST";
  std::string url;  // scheme://host[:port]/path
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  double timeout_seconds = 60.0;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Raised by a transport when no HTTP response was obtained at all
// (connection refused, timeout, TLS failure). Retryable.
class TransportFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse Send(const HttpRequest& request) = 0;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// Sends with exponential backoff on TransportFailure, 429 and 5xx. Returns
// the last response once retries are exhausted on a retryable status, and
// rethrows the last TransportFailure otherwise. Other statuses return
// immediately.
HttpResponse SendWithRetry(Transport& transport, const HttpRequest& request,
                           const RetryPolicy& policy,
                           const Sleeper& sleep = nullptr);

bool IsRetryableStatus(int status);

// Bounds concurrent requests. BasicLockable, so it works with
// std::lock_guard.
class InFlightLimit {
 public:
  static constexpr std::ptrdiff_t kMax = 1024;

  explicit InFlightLimit(std::ptrdiff_t limit) : slots_(limit) {}

  void lock() { slots_.acquire(); }
  void unlock() { slots_.release(); }

 private:
  std::counting_semaphore<kMax> slots_;
};

struct ParsedUrl {
  std::string scheme_host_port;  // "http://localhost:8080"
  std::string path;              // "/v1/logprobs", "/" if absent
};

// Throws deltascore::Error(kInvalidInput) on a URL without a scheme.
ParsedUrl ParseUrl(const std::string& url);

}  // namespace deltascore::net

#endif  // DELTASCORE_NET_TRANSPORT_H_
