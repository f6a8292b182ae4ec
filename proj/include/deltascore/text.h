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

// Whitespace tokenization and sentence segmentation for pre-tokenized story
// corpora ("did n't", "evening ." style). Punctuation glued to a word is split
// off; everything else is delimited by ASCII whitespace.

#ifndef DELTASCORE_TEXT_H_
#define DELTASCORE_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace deltascore {

// A story condition (title, prompt or leading sentence) plus the story text.
struct ConditionedStory {
  std::string id;
  std::string condition;  // May be empty: scoring then degenerates to p(s).
  std::string story;
  std::optional<std::string> system = std::nullopt;
};

// Throws InvalidInput when the story is empty after trimming.
void ValidateStory(const ConditionedStory& story);

namespace text {

struct Token {
  std::string text;
  std::size_t begin = 0;  // Byte offset into the source text.
  std::size_t end = 0;    // One past the last byte.
};

// Half-open token index range [begin, end).
struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const SentenceRange&) const = default;
};

struct TokenizedStory {
  std::string source;
  std::vector<Token> tokens;
  std::vector<SentenceRange> sentences;

  std::vector<std::string> Words() const;
};

// Throws InvalidInput on empty or whitespace-only text.
TokenizedStory Tokenize(std::string_view text);

// Splits into word strings only; returns an empty list for blank text.
std::vector<std::string> TokenizeWords(std::string_view text);

// A sentence ends after ".", "!" or "?" plus any immediately following
// terminators or closing quotes. Always yields at least one range for a
// non-empty token list; an empty list yields no ranges.
std::vector<SentenceRange> SegmentSentences(std::span<const std::string> words);

// Joins with single spaces.
std::string Detokenize(std::span<const std::string> words);

bool IsSentenceTerminator(std::string_view token);
bool IsClosingQuote(std::string_view token);

std::string AsciiLower(std::string_view s);
std::string_view Trim(std::string_view s);
bool IsBlank(std::string_view s);

}  // namespace text
}  // namespace deltascore

#endif  // DELTASCORE_TEXT_H_
