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

#include "deltascore/eval/kendall.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "deltascore/error.h"

namespace deltascore::eval {
namespace {

std::int64_t TiedPairs(std::int64_t run) { return run * (run - 1) / 2; }

// Sum of t(t-1)/2 over runs of equal adjacent elements under `equal`.
template <typename Equal>
std::int64_t CountTies(const std::vector<std::size_t>& order, Equal equal) {
  std::int64_t ties = 0;
  std::int64_t run = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (equal(order[i - 1], order[i])) {
      ++run;
    } else {
      ties += TiedPairs(run);
      run = 1;
    }
  }
  return ties + TiedPairs(run);
}

// Stable merge sort of `order` by ys; returns the number of strict
// inversions (pairs with y_i > y_j, i before j).
std::int64_t SortCountingInversions(std::vector<std::size_t>& order,
                                    std::span<const double> ys) {
  std::vector<std::size_t> buffer(order.size());
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < order.size(); width *= 2) {
    for (std::size_t lo = 0; lo < order.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, order.size());
      const std::size_t hi = std::min(lo + 2 * width, order.size());
      std::size_t i = lo;
      std::size_t j = mid;
      std::size_t k = lo;
      while (i < mid && j < hi) {
        if (ys[order[j]] < ys[order[i]]) {
          inversions += static_cast<std::int64_t>(mid - i);
          buffer[k++] = order[j++];
        } else {
          buffer[k++] = order[i++];
        }
      }
      while (i < mid) buffer[k++] = order[i++];
      while (j < hi) buffer[k++] = order[j++];
    }
    order.swap(buffer);
  }
  return inversions;
}

}  // namespace

double TauB(const PairCounts& c) {
  return static_cast<double>(c.concordant - c.discordant) /
         std::sqrt(static_cast<double>(c.pairs - c.ties_x) *
                   static_cast<double>(c.pairs - c.ties_y));
}

KendallResult KendallTau(std::span<const double> xs,
                         std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidInput,
                "kendall: lengths differ (" + std::to_string(xs.size()) +
                    " vs " + std::to_string(ys.size()) + ")");
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "kendall: need at least 2 values");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) {
      throw Error(ErrorCode::kInvalidInput, "kendall: NaN value");
    }
  }

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] < xs[b] || (xs[a] == xs[b] && ys[a] < ys[b]);
  });

  PairCounts counts;
  counts.n = static_cast<std::int64_t>(xs.size());
  counts.pairs = TiedPairs(counts.n);
  counts.ties_x = CountTies(
      order, [&](std::size_t a, std::size_t b) { return xs[a] == xs[b]; });
  counts.ties_xy = CountTies(order, [&](std::size_t a, std::size_t b) {
    return xs[a] == xs[b] && ys[a] == ys[b];
  });
  // Within an x-tie group ys ascend, so every inversion has x strictly
  // increasing and y strictly decreasing.
  counts.discordant = SortCountingInversions(order, ys);
  counts.ties_y = CountTies(
      order, [&](std::size_t a, std::size_t b) { return ys[a] == ys[b]; });
  counts.concordant = counts.pairs - counts.ties_x - counts.ties_y +
                      counts.ties_xy - counts.discordant;

  if (counts.pairs == counts.ties_x || counts.pairs == counts.ties_y) {
    throw Error(ErrorCode::kUndefinedCorrelation,
                "kendall: a list is constant");
  }
  return KendallResult{TauB(counts), counts};
}

}  // namespace deltascore::eval
