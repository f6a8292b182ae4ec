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

#ifndef DELTASCORE_SCORING_NGRAM_MODEL_H_
#define DELTASCORE_SCORING_NGRAM_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "deltascore/scoring/scoring.h"

namespace deltascore::scoring {

// Additively smoothed n-gram language model:
//
//   p(w | h) = (count(h, w) + alpha) / (count(h) + alpha * V)
//
// where h is the last (order - 1) tokens and V counts the vocabulary
// including the unknown and end symbols. Training sequences are padded with
// (order - 1) begin markers and one end marker. Immutable after training.
class NGramModel final : public Backend {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  // Throws InvalidInput on an empty corpus, order < 1 or alpha <= 0.
  static NGramModel Train(std::span<const std::vector<std::string>> corpus,
                          int order, double alpha);

  // Text format:
  //   ngram-model v1 order=K alpha=A vocab=V
  //   k<TAB>gram tokens<TAB>count
  // Lines are sorted by k, then gram. Parse(Serialize()) reproduces the model
  // and Serialize(Parse(s)) == s for any s produced by Serialize.
  static NGramModel Parse(std::istream& in);
  static NGramModel Load(const std::string& path);
  std::string Serialize() const;
  void Save(const std::string& path) const;

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::set<std::string>& vocabulary() const { return vocab_; }

  // Count of a k-gram (1 <= k <= order) as stored in the model.
  std::uint64_t Count(std::span<const std::string> gram) const;

  // p(word | history); only the last (order - 1) history entries are used and
  // out-of-vocabulary words are mapped to <unk>. A history shorter than
  // order - 1 is left-padded with <s>; explicit <s> entries are kept.
  double Probability(std::span<const std::string> history,
                     std::string_view word) const;

  std::string id() const override;
  StoryTokenScores ScoreStoryTokens(std::string_view condition,
                                    std::string_view story) const override;

  bool operator==(const NGramModel& other) const;

 private:
  NGramModel(int order, double alpha) : order_(order), alpha_(alpha) {}

  // Vocabulary member or <unk>.
  std::string Normalize(std::string_view word) const;
  void RebuildDerived();

  int order_;
  double alpha_;
  // counts_[k - 1] maps space-joined k-grams to counts.
  std::vector<std::map<std::string, std::uint64_t>> counts_;
  std::set<std::string> vocab_;
  std::unordered_map<std::string, std::uint64_t> history_counts_;
  std::unordered_map<std::string, std::uint64_t> top_counts_;
};

}  // namespace deltascore::scoring

#endif  // DELTASCORE_SCORING_NGRAM_MODEL_H_
