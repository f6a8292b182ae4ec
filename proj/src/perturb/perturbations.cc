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

#include "deltascore/perturb/perturbations.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "deltascore/error.h"
#include "deltascore/rng.h"

namespace deltascore::perturb {
namespace {

PerturbedStory Begin(const ConditionedStory& story, Kind kind, double degree,
                     std::uint64_t seed) {
  ValidateStory(story);
  PerturbedStory result;
  result.original_id = story.id;
  result.original = story.story;
  result.text = story.story;
  result.spec = PerturbationSpec{kind, degree, seed};
  return result;
}

PerturbedStory Noop(PerturbedStory result, std::string reason) {
  result.text = result.original;
  result.noop = true;
  result.noop_reason = std::move(reason);
  return result;
}

// Flags the result as a no-op when the output happens to equal the input.
PerturbedStory Finish(PerturbedStory result) {
  if (result.text == result.original && !result.noop) {
    result.noop = true;
    result.noop_reason = "output equals input";
  }
  return result;
}

std::size_t RoundHalfUp(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

bool IsAsciiAlpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool IsAscii(char c) { return static_cast<unsigned char>(c) < 0x80; }

std::vector<std::size_t> SwappablePairs(std::string_view word) {
  std::vector<std::size_t> pairs;
  for (std::size_t j = 0; j + 1 < word.size(); ++j) {
    if (IsAscii(word[j]) && IsAscii(word[j + 1]) && word[j] != word[j + 1]) {
      pairs.push_back(j);
    }
  }
  return pairs;
}

bool TypoEligible(std::string_view word) {
  return word.size() >= 2 &&
         std::any_of(word.begin(), word.end(), IsAsciiAlpha) &&
         !SwappablePairs(word).empty();
}

// In-place Fisher-Yates over perm[begin, end).
void ShuffleRange(SeededRng& rng, std::vector<std::size_t>& perm,
                  std::size_t begin, std::size_t end) {
  if (end - begin < 2) return;
  for (std::size_t i = end - 1; i > begin; --i) {
    const std::size_t j = begin + rng.UniformBelow(i - begin + 1);
    std::swap(perm[i], perm[j]);
  }
}

std::vector<std::size_t> Identity(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return perm;
}

std::string MatchFirstLetterCase(std::string_view original,
                                 std::string replacement) {
  if (!original.empty() && !replacement.empty() &&
      std::isupper(static_cast<unsigned char>(original.front()))) {
    replacement.front() = static_cast<char>(
        std::toupper(static_cast<unsigned char>(replacement.front())));
  }
  return replacement;
}

// Rebuilds `source` with the given token spans substituted, leaving all other
// bytes (including whitespace) untouched.
std::string ReplaceTokens(const text::TokenizedStory& tokenized,
                          const std::map<std::size_t, std::string>& edits) {
  std::string out;
  std::size_t cursor = 0;
  for (const auto& [index, replacement] : edits) {
    const text::Token& token = tokenized.tokens[index];
    out.append(tokenized.source, cursor, token.begin - cursor);
    out += replacement;
    cursor = token.end;
  }
  out.append(tokenized.source, cursor, std::string::npos);
  return out;
}

const std::map<std::string, std::string, std::less<>>& AgreementFlips() {
  static const auto* flips = new std::map<std::string, std::string, std::less<>>{
      {"is", "am"},   {"am", "is"},    {"are", "is"},
      {"was", "were"}, {"were", "was"}, {"has", "have"},
      {"have", "has"}, {"does", "do"},  {"do", "does"},
  };
  return *flips;
}

bool IsThirdPersonSingular(std::string_view lower) {
  return lower == "he" || lower == "she" || lower == "it";
}

bool IsNonThirdPerson(std::string_view lower) {
  return lower == "i" || lower == "you" || lower == "we" || lower == "they";
}

// Words that commonly follow a pronoun but are not agreeing present-tense
// verbs.
bool IsAgreementNeutral(std::string_view lower) {
  static const auto* words = new std::set<std::string, std::less<>>{
      "will",   "would",   "could", "should", "can",     "may",  "might",
      "must",   "shall",   "did",   "had",    "also",    "always",
      "never",  "just",    "really", "all",   "both",    "then", "still",
      "only",   "often",   "usually", "finally", "soon", "too",  "not",
      "and",    "or",      "but",   "who",    "that",    "ever", "even",
      "sometimes", "once", "almost", "already", "quickly", "slowly"};
  return words->count(lower) != 0;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::optional<std::string> StripThirdPersonS(const std::string& lower) {
  if (lower.size() <= 2 || !EndsWith(lower, "s") || EndsWith(lower, "ss") ||
      EndsWith(lower, "us") || EndsWith(lower, "is")) {
    return std::nullopt;
  }
  if (lower.size() > 4 && EndsWith(lower, "ies")) {
    return lower.substr(0, lower.size() - 3) + "y";
  }
  for (std::string_view suffix : {"sses", "ches", "shes", "xes", "zes", "oes"}) {
    if (EndsWith(lower, suffix)) return lower.substr(0, lower.size() - 2);
  }
  return lower.substr(0, lower.size() - 1);
}

std::optional<std::string> AddThirdPersonS(const std::string& lower) {
  if (lower.size() < 2 || EndsWith(lower, "ed")) return std::nullopt;
  if (EndsWith(lower, "y") && !IsVowel(lower[lower.size() - 2])) {
    return lower.substr(0, lower.size() - 1) + "ies";
  }
  for (std::string_view suffix : {"s", "sh", "ch", "x", "z", "o"}) {
    if (EndsWith(lower, suffix)) return lower + "es";
  }
  return lower + "s";
}

}  // namespace

PerturbedStory PerturbTypo(const ConditionedStory& story, double degree,
                           std::uint64_t seed) {
  Validate(PerturbationSpec{Kind::kTypo, degree, seed});
  PerturbedStory result = Begin(story, Kind::kTypo, degree, seed);
  const text::TokenizedStory tokenized = text::Tokenize(story.story);

  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < tokenized.tokens.size(); ++i) {
    if (TypoEligible(tokenized.tokens[i].text)) pool.push_back(i);
  }
  if (pool.empty()) return Noop(std::move(result), "no eligible token");
  const std::size_t picks = RoundHalfUp(degree * static_cast<double>(pool.size()));
  if (picks == 0) return Noop(std::move(result), "zero tokens selected");

  SeededRng rng(seed);
  // Partial Fisher-Yates: the first `picks` entries become a uniform sample.
  for (std::size_t i = 0; i < picks; ++i) {
    const std::size_t j = i + rng.UniformBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> chosen(pool.begin(), pool.begin() + picks);
  std::sort(chosen.begin(), chosen.end());

  for (std::size_t index : chosen) {
    const text::Token& token = tokenized.tokens[index];
    const std::vector<std::size_t> pairs = SwappablePairs(token.text);
    const std::size_t at = pairs[rng.UniformBelow(pairs.size())];
    std::string swapped = token.text;
    std::swap(swapped[at], swapped[at + 1]);
    result.text.replace(token.begin, token.text.size(), swapped);
    result.edits.push_back({"swap", index, token.text, swapped});
  }
  return Finish(std::move(result));
}

PerturbedStory PerturbSubjVerb(const ConditionedStory& story,
                               std::uint64_t seed) {
  PerturbedStory result = Begin(story, Kind::kSubjVerbDis, 1.0, seed);
  const text::TokenizedStory tokenized = text::Tokenize(story.story);
  const auto& flips = AgreementFlips();

  std::map<std::size_t, std::string> replacements;
  for (std::size_t i = 0; i < tokenized.tokens.size(); ++i) {
    const std::string& word = tokenized.tokens[i].text;
    const std::string lower = text::AsciiLower(word);
    std::optional<std::string> flipped;
    if (const auto it = flips.find(lower); it != flips.end()) {
      flipped = it->second;
    } else if (i > 0 && std::all_of(word.begin(), word.end(), IsAsciiAlpha) &&
               !IsAgreementNeutral(lower)) {
      const std::string subject = text::AsciiLower(tokenized.tokens[i - 1].text);
      if (IsThirdPersonSingular(subject)) {
        flipped = StripThirdPersonS(lower);
      } else if (IsNonThirdPerson(subject)) {
        flipped = AddThirdPersonS(lower);
      }
    }
    if (!flipped) continue;
    std::string replacement = MatchFirstLetterCase(word, *flipped);
    result.edits.push_back({"agreement", i, word, replacement});
    replacements.emplace(i, std::move(replacement));
  }
  if (replacements.empty()) {
    return Noop(std::move(result), "no recognized verb");
  }
  result.text = ReplaceTokens(tokenized, replacements);
  return Finish(std::move(result));
}

PerturbedStory PerturbJumble(const ConditionedStory& story, double degree,
                             std::uint64_t seed) {
  Validate(PerturbationSpec{Kind::kJumble, degree, seed});
  PerturbedStory result = Begin(story, Kind::kJumble, degree, seed);
  const std::vector<std::string> words = text::Tokenize(story.story).Words();
  const std::size_t m = words.size();
  if (m < 2) return Noop(std::move(result), "fewer than two tokens");
  if (degree == 0.0) return Noop(std::move(result), "zero degree");

  const std::size_t span =
      std::max<std::size_t>(2, RoundHalfUp(degree * static_cast<double>(m)));
  SeededRng rng(seed);
  std::vector<std::size_t> perm = Identity(m);
  for (std::size_t begin = 0; begin < m; begin += span) {
    ShuffleRange(rng, perm, begin, std::min(begin + span, m));
  }

  std::vector<std::string> shuffled;
  shuffled.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    shuffled.push_back(words[perm[i]]);
    if (perm[i] != i) result.edits.push_back({"move", i, words[i], words[perm[i]]});
  }
  result.text = text::Detokenize(shuffled);
  return Finish(std::move(result));
}

PerturbedStory PerturbSentReorder(const ConditionedStory& story,
                                  std::uint64_t seed) {
  PerturbedStory result = Begin(story, Kind::kSentReorder, 1.0, seed);
  const text::TokenizedStory tokenized = text::Tokenize(story.story);
  const std::vector<std::string> words = tokenized.Words();
  const std::size_t n = tokenized.sentences.size();
  if (n < 2) return Noop(std::move(result), "fewer than two sentences");

  std::vector<std::size_t> perm;
  if (n == 2) {
    perm = {1, 0};
  } else {
    SeededRng rng(seed);
    const std::vector<std::size_t> identity = Identity(n);
    perm = identity;
    ShuffleRange(rng, perm, 0, n);
    if (perm == identity) ShuffleRange(rng, perm, 0, n);
  }

  auto sentence_text = [&](std::size_t s) {
    const text::SentenceRange& range = tokenized.sentences[s];
    return text::Detokenize(
        std::span<const std::string>(words).subspan(range.begin, range.size()));
  };
  std::vector<std::string> reordered;
  reordered.reserve(words.size());
  for (std::size_t j = 0; j < n; ++j) {
    const text::SentenceRange& range = tokenized.sentences[perm[j]];
    reordered.insert(reordered.end(), words.begin() + range.begin,
                     words.begin() + range.end);
    if (perm[j] != j) {
      result.edits.push_back(
          {"move_sentence", j, sentence_text(j), sentence_text(perm[j])});
    }
  }
  result.text = text::Detokenize(reordered);
  return Finish(std::move(result));
}

PerturbedStory PerturbRmRelWords(const ConditionedStory& story,
                                 const WordSet& relevant_words) {
  if (relevant_words.empty()) {
    throw Error(ErrorCode::kInvalidInput, "relevant-word set is empty");
  }
  PerturbedStory result = Begin(story, Kind::kRmRelWords, 1.0, 0);
  const std::vector<std::string> words = text::Tokenize(story.story).Words();
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (relevant_words.count(text::AsciiLower(words[i])) != 0) {
      result.edits.push_back({"delete", i, words[i], ""});
    } else {
      kept.push_back(words[i]);
    }
  }
  if (result.edits.empty()) {
    return Noop(std::move(result), "no relevant word in story");
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kDegeneratePerturbation,
                "removing relevant words would empty story '" + story.id + "'");
  }
  result.text = text::Detokenize(kept);
  return Finish(std::move(result));
}

std::vector<ConditionedStory> BuildReplacementPool(
    const ConditionedStory& story, std::span<const ConditionedStory> corpus) {
  std::vector<ConditionedStory> pool;
  for (const ConditionedStory& candidate : corpus) {
    if (candidate.id != story.id && candidate.condition != story.condition) {
      pool.push_back(candidate);
    }
  }
  return pool;
}

PerturbedStory PerturbStoryReplace(const ConditionedStory& story,
                                   std::span<const ConditionedStory> pool,
                                   const scoring::Backend& backend) {
  if (pool.empty()) {
    throw Error(ErrorCode::kInvalidInput, "replacement pool is empty");
  }
  PerturbedStory result = Begin(story, Kind::kStoryReplace, 1.0, 0);
  // Conditions are ignored on both sides when matching likelihoods.
  const double target =
      scoring::ScoreConditional(backend, "", story.story).mean_logprob;

  const ConditionedStory* best = nullptr;
  double best_distance = 0.0;
  for (const ConditionedStory& candidate : pool) {
    const double distance = std::abs(
        scoring::ScoreConditional(backend, "", candidate.story).mean_logprob -
        target);
    if (best == nullptr || distance < best_distance ||
        (distance == best_distance && candidate.id < best->id)) {
      best = &candidate;
      best_distance = distance;
    }
  }
  result.text = best->story;
  result.edits.push_back({"replace_story", 0, story.id, best->id});
  return Finish(std::move(result));
}

PerturbedStory PerturbAntonym(const ConditionedStory& story, double degree,
                              std::uint64_t seed,
                              const AntonymLexicon& lexicon) {
  Validate(PerturbationSpec{Kind::kAntonym, degree, seed});
  PerturbedStory result = Begin(story, Kind::kAntonym, degree, seed);
  const text::TokenizedStory tokenized = text::Tokenize(story.story);

  SeededRng rng(seed);
  bool any_entry = false;
  std::map<std::size_t, std::string> replacements;
  for (std::size_t i = 0; i < tokenized.tokens.size(); ++i) {
    const std::string& word = tokenized.tokens[i].text;
    const auto antonym = lexicon.First(word);
    if (!antonym) continue;
    any_entry = true;
    if (!(rng.UniformDouble() < degree)) continue;
    std::string replacement = MatchFirstLetterCase(word, std::string(*antonym));
    result.edits.push_back({"antonym", i, word, replacement});
    replacements.emplace(i, std::move(replacement));
  }
  if (!any_entry) {
    return Noop(std::move(result), "no token has an antonym entry");
  }
  if (replacements.empty()) {
    return Noop(std::move(result), "no replacement drawn");
  }
  result.text = ReplaceTokens(tokenized, replacements);
  return Finish(std::move(result));
}

PerturbedStory Perturb(const ConditionedStory& story,
                       const PerturbationSpec& spec,
                       const PerturbationContext& context) {
  Validate(spec);
  auto require = [&](const void* handle, const char* what) {
    if (handle == nullptr) {
      throw Error(ErrorCode::kInvalidInput,
                  std::string(KindName(spec.kind)) + " needs " + what);
    }
  };

  PerturbedStory result;
  switch (spec.kind) {
    case Kind::kTypo:
      return PerturbTypo(story, spec.degree, spec.seed);
    case Kind::kSubjVerbDis:
      return PerturbSubjVerb(story, spec.seed);
    case Kind::kJumble:
      return PerturbJumble(story, spec.degree, spec.seed);
    case Kind::kSentReorder:
      return PerturbSentReorder(story, spec.seed);
    case Kind::kAntonym:
      require(context.antonyms, "an antonym lexicon");
      return PerturbAntonym(story, spec.degree, spec.seed, *context.antonyms);
    case Kind::kRmRelWords:
      if (context.relevant_words != nullptr) {
        result = PerturbRmRelWords(story, *context.relevant_words);
      } else {
        require(context.service, "a relevant-word set or a text service");
        result = PerturbRmRelWords(
            story, RelevantWordsViaService(story, *context.service));
      }
      break;
    case Kind::kStoryReplace: {
      require(context.backend, "a scoring backend");
      const std::vector<ConditionedStory> pool =
          BuildReplacementPool(story, context.corpus);
      result = PerturbStoryReplace(story, pool, *context.backend);
      break;
    }
    case Kind::kCommonsense:
      require(context.service, "a text service");
      result = PerturbViaService(story, llm::TemplateId::kCommonsense,
                                 *context.service);
      break;
    case Kind::kBlanderNarrative:
      require(context.service, "a text service");
      result = PerturbViaService(story, llm::TemplateId::kBlanderNarrative,
                                 *context.service);
      break;
  }
  result.spec = spec;
  return result;
}

}  // namespace deltascore::perturb
