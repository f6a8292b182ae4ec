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

#ifndef DELTASCORE_RNG_H_
#define DELTASCORE_RNG_H_

#include <cstdint>
#include <string_view>

namespace deltascore {

// SplitMix64 (Steele, Lea & Flood). Used to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();

 private:
  std::uint64_t state_;
};

// One SplitMix64 output step applied to `x`, without state.
std::uint64_t Mix64(std::uint64_t x);

// xoshiro256** 1.0 seeded through SplitMix64. All perturbation randomness
// goes through this generator so outputs are identical on every platform.
class SeededRng {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256**/splitmix64";

  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t Next();

  // Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
  // `bound` must be positive.
  std::uint64_t UniformBelow(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformDouble();

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

std::uint64_t Fnv1a64(std::string_view bytes);

// Per-story seed: hash of (global seed, story id, perturbation kind name,
// replicate index). Replicate 0 is the default single-seed run.
std::uint64_t DeriveSeed(std::uint64_t global_seed, std::string_view story_id,
                         std::string_view kind, std::uint64_t replicate = 0);

}  // namespace deltascore

#endif  // DELTASCORE_RNG_H_
