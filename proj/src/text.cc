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

#include "deltascore/text.h"

#include <algorithm>
#include <cctype>

#include "deltascore/error.h"

namespace deltascore {

void ValidateStory(const ConditionedStory& story) {
  if (text::IsBlank(story.story)) {
    throw Error(ErrorCode::kInvalidInput,
                "story '" + story.id + "' is empty after trimming");
  }
}

namespace text {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsAlnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsOpeningPunct(char c) { return c == '"' || c == '(' || c == '['; }

bool IsTrailingPunct(char c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
    case '"':
    case ')':
    case ']':
      return true;
    default:
      return false;
  }
}

void EmitChunk(std::string_view source, std::size_t begin, std::size_t end,
               std::vector<Token>& out) {
  auto emit = [&](std::size_t b, std::size_t e) {
    out.push_back(Token{std::string(source.substr(b, e - b)), b, e});
  };
  const std::string_view chunk = source.substr(begin, end - begin);
  if (std::none_of(chunk.begin(), chunk.end(), IsAlnum)) {
    emit(begin, end);
    return;
  }

  std::size_t word_begin = begin;
  while (word_begin < end && IsOpeningPunct(source[word_begin])) {
    emit(word_begin, word_begin + 1);
    ++word_begin;
  }
  std::size_t word_end = end;
  while (word_end > word_begin && IsTrailingPunct(source[word_end - 1])) {
    --word_end;
  }
  emit(word_begin, word_end);

  // Split the trailing run: each mark is its own token, except that runs of
  // periods ("...") stay together.
  std::size_t i = word_end;
  while (i < end) {
    std::size_t j = i + 1;
    if (source[i] == '.') {
      while (j < end && source[j] == '.') ++j;
    }
    emit(i, j);
    i = j;
  }
}

}  // namespace

std::vector<std::string> TokenizedStory::Words() const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& token : tokens) words.push_back(token.text);
  return words;
}

TokenizedStory Tokenize(std::string_view text) {
  if (IsBlank(text)) {
    throw Error(ErrorCode::kInvalidInput, "cannot tokenize empty text");
  }
  TokenizedStory result;
  result.source = std::string(text);
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    EmitChunk(text, i, j, result.tokens);
    i = j;
  }
  const std::vector<std::string> words = result.Words();
  result.sentences = SegmentSentences(words);
  return result;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  if (IsBlank(text)) return {};
  return Tokenize(text).Words();
}

bool IsSentenceTerminator(std::string_view token) {
  return token == "." || token == "!" || token == "?";
}

bool IsClosingQuote(std::string_view token) {
  return token == "\"" || token == "''" || token == "'" || token == ")" ||
         token == "\xE2\x80\x9D" || token == "\xE2\x80\x99";
}

std::vector<SentenceRange> SegmentSentences(
    std::span<const std::string> words) {
  std::vector<SentenceRange> ranges;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < words.size()) {
    if (!IsSentenceTerminator(words[i])) {
      ++i;
      continue;
    }
    ++i;
    while (i < words.size() &&
           (IsSentenceTerminator(words[i]) || IsClosingQuote(words[i]))) {
      ++i;
    }
    ranges.push_back({start, i});
    start = i;
  }
  if (start < words.size()) ranges.push_back({start, words.size()});
  return ranges;
}

std::string Detokenize(std::span<const std::string> words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return s.substr(b, e - b);
}

bool IsBlank(std::string_view s) { return Trim(s).empty(); }

}  // namespace text
}  // namespace deltascore
