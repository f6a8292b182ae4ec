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

// All-pairs tau-b used as the reference for the O(n log n) implementation.

#ifndef DELTASCORE_TESTS_SUPPORT_BRUTE_FORCE_KENDALL_H_
#define DELTASCORE_TESTS_SUPPORT_BRUTE_FORCE_KENDALL_H_

#include <cmath>
#include <cstdint>
#include <vector>

namespace deltascore::testing {

struct BruteForceTau {
  double tau = 0.0;
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t ties_x = 0;
  std::int64_t ties_y = 0;
  std::int64_t ties_xy = 0;
  std::int64_t pairs = 0;
};

inline BruteForceTau BruteForceKendall(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
  BruteForceTau r;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++r.pairs;
      const bool tx = xs[i] == xs[j];
      const bool ty = ys[i] == ys[j];
      if (tx) ++r.ties_x;
      if (ty) ++r.ties_y;
      if (tx && ty) ++r.ties_xy;
      if (tx || ty) continue;
      if ((xs[i] < xs[j]) == (ys[i] < ys[j])) {
        ++r.concordant;
      } else {
        ++r.discordant;
      }
    }
  }
  r.tau = static_cast<double>(r.concordant - r.discordant) /
          std::sqrt(static_cast<double>(r.pairs - r.ties_x) *
                    static_cast<double>(r.pairs - r.ties_y));
  return r;
}

}  // namespace deltascore::testing

#endif  // DELTASCORE_TESTS_SUPPORT_BRUTE_FORCE_KENDALL_H_
