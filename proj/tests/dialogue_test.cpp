// Copyright 2026 The GLC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "glc/dialogue.hpp"
#include "glc/error.hpp"

namespace glc {
namespace {

Dialogue make_dialogue(std::vector<std::pair<std::string, std::string>> turns, std::string id = "d") {
  Dialogue d;
  d.id = std::move(id);
  for (auto& [role, text] : turns) d.utterances.push_back(Utterance{Role(role), text, d.utterances.size()});
  return d;
}

TEST(RoleTest, RejectsColonAndEmpty) {
  EXPECT_THROW(Role("us:er"), ValidationError);
  EXPECT_THROW(Role(""), ValidationError);
  EXPECT_EQ(Role("agent").name(), "agent");
}

TEST(UtteranceTest, RendersRoleColonSentence) {
  Utterance u{Role("user"), "hi there", 0};
  EXPECT_EQ(u.rendered(), "user:hi there");
}

TEST(ParseDialoguesTest, SingleRecordWithTwoUtterances) {
  std::istringstream in(
      R"({"id": "a", "utterances": [{"role": "user", "text": "hi"}, {"role": "agent", "text": "hello"}]})");
  auto ds = parse_dialogues(in);
  ASSERT_EQ(ds.size(), 1u);
  ASSERT_EQ(ds[0].size(), 2u);
  EXPECT_EQ(ds[0].utterances[0].index, 0u);
  EXPECT_EQ(ds[0].utterances[1].index, 1u);
  EXPECT_EQ(ds[0].utterances[1].role.name(), "agent");
  EXPECT_TRUE(ds[0].references.empty());
}

TEST(ParseDialoguesTest, PreservesFileOrderAndReferences) {
  std::istringstream in(
      "{\"id\": \"1\", \"utterances\": [{\"role\": \"u\", \"text\": \"x\"}]}\n"
      "\n"
      "{\"id\": \"2\", \"utterances\": [{\"role\": \"u\", \"text\": \"y\"}], \"references\": {\"final\": \"f\", "
      "\"user\": \"u\"}}\n"
      "{\"id\": \"3\", \"utterances\": [{\"role\": \"u\", \"text\": \"z\"}]}\r\n");
  auto ds = parse_dialogues(in);
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[0].id, "1");
  EXPECT_EQ(ds[1].id, "2");
  EXPECT_EQ(ds[2].id, "3");
  EXPECT_EQ(ds[1].references.at(SummaryTarget::kFinal), "f");
  EXPECT_EQ(ds[1].references.at(SummaryTarget::kUser), "u");
}

TEST(ParseDialoguesTest, RoleWithColonIsValidationError) {
  std::istringstream in(R"({"id": "a", "utterances": [{"role": "us:er", "text": "hi"}]})");
  EXPECT_THROW(parse_dialogues(in), ValidationError);
}

TEST(ParseDialoguesTest, EmptyUtterancesIsValidationError) {
  std::istringstream in(R"({"id": "a", "utterances": []})");
  EXPECT_THROW(parse_dialogues(in), ValidationError);
}

TEST(ParseDialoguesTest, MalformedLineCarriesLineNumber) {
  std::istringstream in("{\"id\": \"a\", \"utterances\": [{\"role\": \"u\", \"text\": \"x\"}]}\n{\"id\": oops\n");
  try {
    parse_dialogues(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseDialoguesTest, LenientReaderKeepsGoodRecords) {
  std::istringstream in(
      "{\"id\": \"a\", \"utterances\": [{\"role\": \"u\", \"text\": \"x\"}]}\n"
      "not json\n"
      "{\"id\": \"b\", \"utterances\": [{\"role\": \"u\", \"text\": \"y\"}]}\n");
  auto records = read_dialogue_records(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].dialogue);
  EXPECT_FALSE(records[1].dialogue);
  EXPECT_NE(records[1].error.find("line 2"), std::string::npos);
  EXPECT_TRUE(records[2].dialogue);
}

TEST(RolePromptTest, PromptTexts) {
  EXPECT_EQ(prompt_text(SummaryTarget::kUser), "[User Summary]");
  EXPECT_EQ(prompt_text(SummaryTarget::kAgent), "[Agent Summary]");
  EXPECT_EQ(prompt_text(SummaryTarget::kFinal), "[Final Summary]");
}

TEST(RolePromptTest, UserPromptOccupiesUnitZero) {
  auto d = make_dialogue({{"user", "a"}, {"agent", "b"}, {"user", "c"}});
  auto p = attach_role_prompt(d, SummaryTarget::kUser);
  ASSERT_EQ(p.units.size(), 4u);
  EXPECT_TRUE(p.units[0].is_prompt());
  EXPECT_EQ(p.units[0].rendered(), "[User Summary]");
  EXPECT_EQ(p.units[0].index, 0u);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(p.units[i].index, i);
  EXPECT_EQ(p.units[3].rendered(), "user:c");
  EXPECT_EQ(p.content_size(), 3u);
}

TEST(RolePromptTest, FinalPromptFirstUnit) {
  auto p = attach_role_prompt(make_dialogue({{"user", "a"}}), SummaryTarget::kFinal);
  EXPECT_EQ(p.units.front().rendered(), "[Final Summary]");
}

TEST(RolePromptTest, StripRoundTripAndDeterminism) {
  auto d = make_dialogue({{"user", "a b"}, {"agent", "c"}});
  d.references[SummaryTarget::kAgent] = "ref";
  for (auto target : {SummaryTarget::kUser, SummaryTarget::kAgent, SummaryTarget::kFinal}) {
    auto p = attach_role_prompt(d, target);
    EXPECT_EQ(p, attach_role_prompt(d, target));
    EXPECT_EQ(strip_role_prompt(p), d);
  }
  EXPECT_EQ(strip_role_prompt(without_prompt(d)), d);
}

TEST(RolePromptTest, WithoutPromptIndexesFromOne) {
  auto p = without_prompt(make_dialogue({{"user", "a"}, {"agent", "b"}}));
  EXPECT_FALSE(p.has_prompt());
  EXPECT_EQ(p.units.front().index, 1u);
  EXPECT_EQ(p.unit(2).text, "b");
  EXPECT_THROW(p.unit(0), PreconditionError);
}

TEST(TokenizeTest, DefaultsMatchReferenceSetup) {
  TokenizerConfig config;
  EXPECT_EQ(config.max_tokens, 512u);
  EXPECT_EQ(config.mode, TokenizerMode::kWords);
}

TEST(TokenizeTest, WordModeSplitsRoleAndWords) {
  auto p = without_prompt(make_dialogue({{"user", "hi there"}}));
  auto t = tokenize(p, {});
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"user:", "hi", "there"}));
  ASSERT_EQ(t.spans.size(), 1u);
  EXPECT_EQ(t.spans[0], (UtteranceSpan{1, 0, 3}));
  EXPECT_FALSE(t.prompt_attached);
}

TEST(TokenizeTest, PromptSpanComesFirst) {
  auto p = attach_role_prompt(make_dialogue({{"user", "hi"}}), SummaryTarget::kAgent);
  auto t = tokenize(p, {});
  EXPECT_TRUE(t.prompt_attached);
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"[agent", "summary]", "user:", "hi"}));
  EXPECT_EQ(t.spans[0], (UtteranceSpan{0, 0, 2}));
  EXPECT_EQ(t.spans[1], (UtteranceSpan{1, 2, 4}));
}

TEST(TokenizeTest, BudgetTruncatesBoundaryUtterance) {
  // Two utterances of three tokens each under a budget of four: the first
  // survives whole and the second keeps only its first token.
  auto p = without_prompt(make_dialogue({{"a", "b c"}, {"d", "e f"}}));
  TokenizerConfig config;
  config.max_tokens = 4;
  auto t = tokenize(p, config);
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"a:", "b", "c", "d:"}));
  ASSERT_EQ(t.spans.size(), 2u);
  EXPECT_EQ(t.spans[0].size(), 3u);
  EXPECT_EQ(t.spans[1].size(), 1u);
  EXPECT_TRUE(t.truncated);
}

TEST(TokenizeTest, BudgetDropsWholeTrailingUtterances) {
  auto p = without_prompt(make_dialogue({{"a", "b c"}, {"d", "e f"}, {"g", "h"}}));
  TokenizerConfig config;
  config.max_tokens = 3;
  auto t = tokenize(p, config);
  ASSERT_EQ(t.spans.size(), 1u);
  EXPECT_TRUE(t.truncated);
  EXPECT_FALSE(t.span_of(2));
}

TEST(TokenizeTest, PromptNeverTruncated) {
  auto p = attach_role_prompt(make_dialogue({{"user", "hello"}}), SummaryTarget::kUser);
  TokenizerConfig config;
  config.max_tokens = 2;  // prompt alone fills it
  EXPECT_THROW(tokenize(p, config), BudgetError);
  config.max_tokens = 1;
  EXPECT_THROW(tokenize(p, config), BudgetError);
  config.max_tokens = 3;
  auto t = tokenize(p, config);
  EXPECT_EQ(t.spans.size(), 2u);
  EXPECT_EQ(t.spans[1].size(), 1u);
}

TEST(TokenizeTest, CharModeSplitsCodePoints) {
  TokenizerConfig config;
  config.mode = TokenizerMode::kChars;
  auto p = without_prompt(make_dialogue({{"客服", "您好 呀"}}));
  auto t = tokenize(p, config);
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"客", "服", ":", "您", "好", "呀"}));
}

TEST(TokenizeTest, LowercaseIsOptional) {
  TokenizerConfig config;
  config.lowercase = false;
  EXPECT_EQ(tokenize_text("Hello World", config), (std::vector<std::string>{"Hello", "World"}));
  config.lowercase = true;
  EXPECT_EQ(tokenize_text("Hello World", config), (std::vector<std::string>{"hello", "world"}));
}

TEST(TokenizeTest, IdempotentOnPreSplitText) {
  TokenizerConfig config;
  const auto once = tokenize_text("one two three", config);
  std::string joined;
  for (const auto& t : once) joined += t + " ";
  EXPECT_EQ(tokenize_text(joined, config), once);
}

// Spans partition the token stream for random dialogues and budgets.
TEST(TokenizeTest, SpansPartitionTokensProperty) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> words{"a", "bb", "ccc", "dd", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    Dialogue d;
    d.id = "p";
    const std::size_t n = 1 + rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      std::string text;
      const std::size_t len = rng() % 5;
      for (std::size_t w = 0; w < len; ++w) text += words[rng() % words.size()] + " ";
      d.utterances.push_back(Utterance{Role(i % 2 ? "agent" : "user"), text, i});
    }
    const bool prompt = rng() % 2;
    auto p = prompt ? attach_role_prompt(d, SummaryTarget::kFinal) : without_prompt(d);
    TokenizerConfig config;
    config.max_tokens = 3 + rng() % 20;
    TokenizedDialogue t;
    try {
      t = tokenize(p, config);
    } catch (const BudgetError&) {
      continue;
    }
    ASSERT_LE(t.size(), config.max_tokens);
    std::size_t next = 0;
    for (const auto& s : t.spans) {
      ASSERT_EQ(s.begin, next);
      ASSERT_GT(s.size(), 0u);
      next = s.end;
    }
    ASSERT_EQ(next, t.size());
    if (prompt) ASSERT_EQ(t.spans.front().unit, 0u);
  }
}

}  // namespace
}  // namespace glc
