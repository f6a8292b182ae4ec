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

#include "deltascore/scoring/ngram_model.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deltascore/text.h"

namespace deltascore::scoring {
namespace {

std::string JoinRange(std::span<const std::string> tokens) {
  return text::Detokenize(tokens);
}

std::vector<std::string> SplitOn(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

[[noreturn]] void Malformed(int line, const std::string& why) {
  throw Error(ErrorCode::kIoError,
              "n-gram model line " + std::to_string(line) + ": " + why);
}

template <typename T>
T ParseNumber(std::string_view field, int line, const char* what) {
  T value{};
  const auto result =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
    Malformed(line, std::string("bad ") + what + " '" + std::string(field) +
                        "'");
  }
  return value;
}

std::string_view HeaderValue(std::string_view field, std::string_view key,
                             int line) {
  if (!field.starts_with(key) || field.size() <= key.size() ||
      field[key.size()] != '=') {
    Malformed(line, "expected " + std::string(key) + "=...");
  }
  return field.substr(key.size() + 1);
}

}  // namespace

NGramModel NGramModel::Train(std::span<const std::vector<std::string>> corpus,
                             int order, double alpha) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kInvalidInput, "cannot train on an empty corpus");
  }
  if (order < 1) {
    throw Error(ErrorCode::kInvalidInput, "n-gram order must be >= 1");
  }
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "smoothing constant must be > 0");
  }
  NGramModel model(order, alpha);
  model.counts_.resize(order);
  model.vocab_.insert(std::string(kUnk));
  model.vocab_.insert(std::string(kEos));

  const auto context = static_cast<std::size_t>(order - 1);
  for (const auto& sequence : corpus) {
    std::vector<std::string> padded(context, std::string(kBos));
    for (const std::string& word : sequence) {
      const bool reserved = word == kBos || word == kEos || word == kUnk;
      padded.push_back(reserved ? std::string(kUnk) : word);
      model.vocab_.insert(padded.back());
    }
    padded.emplace_back(kEos);
    for (std::size_t i = context; i < padded.size(); ++i) {
      for (std::size_t k = 1; k <= static_cast<std::size_t>(order); ++k) {
        const std::span<const std::string> gram(&padded[i + 1 - k], k);
        ++model.counts_[k - 1][JoinRange(gram)];
      }
    }
  }
  model.RebuildDerived();
  return model;
}

void NGramModel::RebuildDerived() {
  top_counts_.clear();
  history_counts_.clear();
  for (const auto& [gram, count] : counts_[order_ - 1]) {
    top_counts_.emplace(gram, count);
    const std::size_t cut = gram.rfind(' ');
    history_counts_[cut == std::string::npos ? std::string()
                                             : gram.substr(0, cut)] += count;
  }
}

std::string NGramModel::Normalize(std::string_view word) const {
  auto it = vocab_.find(std::string(word));
  return it == vocab_.end() ? std::string(kUnk) : *it;
}

std::uint64_t NGramModel::Count(std::span<const std::string> gram) const {
  if (gram.empty() || gram.size() > counts_.size()) return 0;
  const auto& table = counts_[gram.size() - 1];
  const auto it = table.find(JoinRange(gram));
  return it == table.end() ? 0 : it->second;
}

double NGramModel::Probability(std::span<const std::string> history,
                               std::string_view word) const {
  const auto context = static_cast<std::size_t>(order_ - 1);
  std::string key;
  for (std::size_t i = 0; i < context; ++i) {
    // Position i of the window maps to history[history.size() - context + i].
    const std::size_t missing =
        history.size() >= context ? 0 : context - history.size();
    std::string token(kBos);
    if (i >= missing) {
      const std::string& entry = history[history.size() - context + i];
      if (entry != kBos) token = Normalize(entry);
    }
    key += token;
    key.push_back(' ');
  }
  const std::string history_key =
      key.empty() ? std::string() : key.substr(0, key.size() - 1);
  key += Normalize(word);

  const auto h = history_counts_.find(history_key);
  const auto hw = top_counts_.find(key);
  const double c_h = h == history_counts_.end() ? 0.0
                                                : static_cast<double>(h->second);
  const double c_hw = hw == top_counts_.end()
                          ? 0.0
                          : static_cast<double>(hw->second);
  return (c_hw + alpha_) /
         (c_h + alpha_ * static_cast<double>(vocab_.size()));
}

std::string NGramModel::id() const {
  return "ngram(order=" + std::to_string(order_) +
         ",alpha=" + FormatDouble(alpha_) +
         ",vocab=" + std::to_string(vocab_.size()) + ")";
}

StoryTokenScores NGramModel::ScoreStoryTokens(std::string_view condition,
                                              std::string_view story) const {
  auto unreserve = [](std::vector<std::string> words) {
    for (std::string& w : words) {
      if (w == kBos || w == kEos) w = kUnk;
    }
    return words;
  };
  std::vector<std::string> context = unreserve(text::TokenizeWords(condition));
  const std::vector<std::string> story_tokens =
      unreserve(text::TokenizeWords(story));
  StoryTokenScores scores;
  scores.logprobs.reserve(story_tokens.size());
  // The end-of-story transition is not scored.
  for (const std::string& token : story_tokens) {
    scores.logprobs.push_back(std::log(Probability(context, token)));
    context.push_back(token);
  }
  return scores;
}

std::string NGramModel::Serialize() const {
  std::ostringstream out;
  out << "ngram-model v1 order=" << order_ << " alpha=" << FormatDouble(alpha_)
      << " vocab=" << vocab_.size() << '\n';
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    for (const auto& [gram, count] : counts_[k]) {
      out << (k + 1) << '\t' << gram << '\t' << count << '\n';
    }
  }
  return out.str();
}

void NGramModel::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << Serialize();
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

NGramModel NGramModel::Parse(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Malformed(1, "missing header");
  const std::vector<std::string> header = SplitOn(line, ' ');
  if (header.size() != 5 || header[0] != "ngram-model" || header[1] != "v1") {
    Malformed(1, "expected 'ngram-model v1 order=K alpha=A vocab=V'");
  }
  const int order = ParseNumber<int>(HeaderValue(header[2], "order", 1), 1,
                                     "order");
  const double alpha = ParseNumber<double>(HeaderValue(header[3], "alpha", 1),
                                           1, "alpha");
  const auto vocab = ParseNumber<std::size_t>(
      HeaderValue(header[4], "vocab", 1), 1, "vocab");
  if (order < 1) Malformed(1, "order must be >= 1");
  if (!(alpha > 0.0)) Malformed(1, "alpha must be > 0");

  NGramModel model(order, alpha);
  model.counts_.resize(order);
  model.vocab_.insert(std::string(kUnk));
  model.vocab_.insert(std::string(kEos));
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitOn(line, '\t');
    if (fields.size() != 3) Malformed(line_number, "expected 3 tab fields");
    const int k = ParseNumber<int>(fields[0], line_number, "k");
    if (k < 1 || k > order) Malformed(line_number, "k out of range");
    const std::vector<std::string> gram = SplitOn(fields[1], ' ');
    if (static_cast<int>(gram.size()) != k) {
      Malformed(line_number, "gram length differs from k");
    }
    const auto count =
        ParseNumber<std::uint64_t>(fields[2], line_number, "count");
    if (!model.counts_[k - 1].emplace(fields[1], count).second) {
      Malformed(line_number, "duplicate gram '" + fields[1] + "'");
    }
    if (k == 1) model.vocab_.insert(gram[0]);
  }
  if (model.vocab_.size() != vocab) {
    Malformed(1, "header vocab=" + std::to_string(vocab) + " but counts give " +
                     std::to_string(model.vocab_.size()));
  }
  model.RebuildDerived();
  return model;
}

NGramModel NGramModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open model " + path);
  return Parse(in);
}

bool NGramModel::operator==(const NGramModel& other) const {
  return order_ == other.order_ && alpha_ == other.alpha_ &&
         counts_ == other.counts_ && vocab_ == other.vocab_;
}

}  // namespace deltascore::scoring
