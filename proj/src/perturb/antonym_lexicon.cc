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

#include "deltascore/perturb/antonym_lexicon.h"

#include <fstream>
#include <istream>

#include "deltascore/error.h"
#include "deltascore/text.h"

namespace deltascore::perturb {

AntonymLexicon AntonymLexicon::Parse(std::istream& in) {
  AntonymLexicon lexicon;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) tab = line.size();
      const std::string_view field =
          text::Trim(std::string_view(line).substr(start, tab - start));
      if (!field.empty()) fields.emplace_back(field);
      start = tab + 1;
    }
    if (fields.size() < 2) {
      throw Error(ErrorCode::kIoError, "antonym lexicon line " +
                                           std::to_string(line_number) +
                                           ": entry has no antonym");
    }
    const std::string key = text::AsciiLower(fields.front());
    if (lexicon.entries_.count(key) != 0) {
      throw Error(ErrorCode::kIoError, "antonym lexicon line " +
                                           std::to_string(line_number) +
                                           ": duplicate entry '" + key + "'");
    }
    fields.erase(fields.begin());
    lexicon.entries_.emplace(key, std::move(fields));
  }
  return lexicon;
}

AntonymLexicon AntonymLexicon::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open lexicon " + path);
  return Parse(in);
}

void AntonymLexicon::Add(std::string_view word,
                         std::vector<std::string> antonyms) {
  if (antonyms.empty()) {
    throw Error(ErrorCode::kInvalidInput,
                "antonym entry '" + std::string(word) + "' is empty");
  }
  entries_[text::AsciiLower(word)] = std::move(antonyms);
}

std::optional<std::string_view> AntonymLexicon::First(
    std::string_view word) const {
  const auto it = entries_.find(text::AsciiLower(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second.front();
}

}  // namespace deltascore::perturb
