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

#ifndef DELTASCORE_NET_HTTP_TRANSPORT_H_
#define DELTASCORE_NET_HTTP_TRANSPORT_H_

#include "deltascore/net/transport.h"

namespace deltascore::net {

// Blocking HTTP(S) transport. A fresh connection per request, so one
// instance may be shared across threads.
class HttpTransport final : public Transport {
 public:
  HttpResponse Send(const HttpRequest& request) override;
};

}  // namespace deltascore::net

#endif  // DELTASCORE_NET_HTTP_TRANSPORT_H_
