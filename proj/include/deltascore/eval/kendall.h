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

// Kendall rank correlation with tie correction (tau-b):
//
//   tau_b = (C - D) / sqrt((P - Tx) * (P - Ty)),  P = n (n - 1) / 2
//
// where C and D count concordant and discordant pairs and Tx, Ty count pairs
// tied in x and in y.

#ifndef DELTASCORE_EVAL_KENDALL_H_
#define DELTASCORE_EVAL_KENDALL_H_

#include <cstdint>
#include <span>

namespace deltascore::eval {

struct PairCounts {
  std::int64_t n = 0;
  std::int64_t pairs = 0;       // P
  std::int64_t concordant = 0;  // C
  std::int64_t discordant = 0;  // D
  std::int64_t ties_x = 0;      // Tx, includes pairs tied in both
  std::int64_t ties_y = 0;      // Ty, includes pairs tied in both
  std::int64_t ties_xy = 0;     // Pairs tied in both

  bool operator==(const PairCounts&) const = default;
};

struct KendallResult {
  double tau = 0.0;
  PairCounts counts;
};

// O(n log n). Throws InvalidInput for unequal lengths, n < 2 or NaN values;
// UndefinedCorrelation when either list is constant.
KendallResult KendallTau(std::span<const double> xs, std::span<const double> ys);

// The tau-b expression applied to finished counts.
double TauB(const PairCounts& counts);

}  // namespace deltascore::eval

#endif  // DELTASCORE_EVAL_KENDALL_H_
