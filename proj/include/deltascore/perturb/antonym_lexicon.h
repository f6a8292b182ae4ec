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

#ifndef DELTASCORE_PERTURB_ANTONYM_LEXICON_H_
#define DELTASCORE_PERTURB_ANTONYM_LEXICON_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltascore::perturb {

// Word -> antonyms, loaded from a tab-separated file:
//
//   # comment
//   happy<TAB>sad<TAB>unhappy
//
// Keys are matched case-insensitively. The first listed antonym is used.
class AntonymLexicon {
 public:
  AntonymLexicon() = default;

  // Throws IoError naming the line for an entry without antonyms or a
  // duplicated headword.
  static AntonymLexicon Parse(std::istream& in);
  static AntonymLexicon Load(const std::string& path);

  void Add(std::string_view word, std::vector<std::string> antonyms);

  std::optional<std::string_view> First(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

}  // namespace deltascore::perturb

#endif  // DELTASCORE_PERTURB_ANTONYM_LEXICON_H_
