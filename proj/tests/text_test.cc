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

#include <gtest/gtest.h>

#include "deltascore/error.h"

namespace deltascore::text {
namespace {

std::vector<std::string> Texts(const TokenizedStory& story) {
  return story.Words();
}

TEST(TokenizeTest, SplitsOnWhitespace) {
  const TokenizedStory story = Tokenize("  we  play\tbadminton\n");
  EXPECT_EQ(Texts(story),
            (std::vector<std::string>{"we", "play", "badminton"}));
  EXPECT_EQ(story.tokens[1].begin, 6u);
  EXPECT_EQ(story.tokens[1].end, 10u);
}

TEST(TokenizeTest, PeelsGluedPunctuation) {
  EXPECT_EQ(TokenizeWords("Hello, world!"),
            (std::vector<std::string>{"Hello", ",", "world", "!"}));
  EXPECT_EQ(TokenizeWords("(quietly) \"yes.\""),
            (std::vector<std::string>{"(", "quietly", ")", "\"", "yes", ".",
                                      "\""}));
}

TEST(TokenizeTest, KeepsEllipsisTogether) {
  EXPECT_EQ(TokenizeWords("wait... no"),
            (std::vector<std::string>{"wait", "...", "no"}));
}

TEST(TokenizeTest, PreTokenizedTextIsUnchanged) {
  EXPECT_EQ(TokenizeWords("he did n't go ."),
            (std::vector<std::string>{"he", "did", "n't", "go", "."}));
}

TEST(TokenizeTest, BlankInput) {
  EXPECT_THROW(Tokenize("   "), Error);
  EXPECT_TRUE(TokenizeWords(" \n").empty());
}

TEST(SegmentTest, BreaksAfterTerminators) {
  const std::vector<std::string> words = {"a", "b", ".", "c", "!", "d"};
  EXPECT_EQ(SegmentSentences(words),
            (std::vector<SentenceRange>{{0, 3}, {3, 5}, {5, 6}}));
}

TEST(SegmentTest, AbsorbsClosingQuotesAndRepeatedTerminators) {
  const std::vector<std::string> words = {"he", "said", "hi", ".", "\"",
                                          "why", "?", "!", "ok", "."};
  EXPECT_EQ(SegmentSentences(words),
            (std::vector<SentenceRange>{{0, 5}, {5, 8}, {8, 10}}));
}

TEST(SegmentTest, EmptyAndUnterminated) {
  EXPECT_TRUE(SegmentSentences({}).empty());
  const std::vector<std::string> words = {"no", "period"};
  EXPECT_EQ(SegmentSentences(words), (std::vector<SentenceRange>{{0, 2}}));
}

TEST(TextHelpersTest, LowerTrimBlank) {
  EXPECT_EQ(AsciiLower("MiXeD"), "mixed");
  EXPECT_EQ(Trim("  x y \n"), "x y");
  EXPECT_TRUE(IsBlank("\t "));
  EXPECT_FALSE(IsBlank(" a"));
}

TEST(ValidateStoryTest, RejectsBlankStory) {
  EXPECT_THROW(ValidateStory({"id", "c", "  ", std::nullopt}), Error);
  EXPECT_NO_THROW(ValidateStory({"id", "", "a story", std::nullopt}));
}

}  // namespace
}  // namespace deltascore::text
