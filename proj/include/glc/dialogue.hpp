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

#pragma once

// Dialogue records, role prompts, and tokenization into a flat token stream
// with per-utterance spans.
//
// Unit indexing convention used throughout the library: index 0 is the role
// prompt pseudo-utterance (present only when a prompt is attached) and the
// dialogue's utterances are units 1..N regardless of whether a prompt exists.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glc {

class Role {
 public:
  // Throws ValidationError if name is empty or contains ':'.
  explicit Role(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Role&, const Role&) = default;

 private:
  std::string name_;
};

struct Utterance {
  Role role;
  std::string sentence;
  std::size_t index = 0;  // 0-based position within the dialogue

  // role + ":" + sentence
  std::string rendered() const;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

enum class SummaryTarget { kUser, kAgent, kFinal };

// "[User Summary]", "[Agent Summary]" or "[Final Summary]".
std::string_view prompt_text(SummaryTarget target);
std::string_view target_name(SummaryTarget target);
// Accepts "user", "agent", "final"; nullopt otherwise.
std::optional<SummaryTarget> parse_target(std::string_view name);

struct Dialogue {
  std::string id;
  std::vector<Utterance> utterances;
  std::map<SummaryTarget, std::string> references;

  std::size_t size() const noexcept { return utterances.size(); }

  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

// Checks the non-empty / contiguous-index invariants.
void validate(const Dialogue& dialogue);

// One record of a line-delimited file. Exactly one of dialogue / error is set.
struct DialogueRecord {
  std::size_t line = 0;
  std::optional<Dialogue> dialogue;
  std::string error;
};

// Lenient reader: every non-blank line yields a record, bad ones carry the
// error text instead of aborting the whole stream.
std::vector<DialogueRecord> read_dialogue_records(std::istream& in);

// Strict reader: throws ParseError (with line number) for malformed JSON or
// ValidationError for schema violations, on the first bad line.
std::vector<Dialogue> parse_dialogues(std::istream& in);

// Parses a single JSON object in the dialogue schema.
Dialogue parse_dialogue_json(std::string_view line);

struct DialogueUnit {
  std::size_t index = 0;
  std::optional<Role> role;  // unset for the prompt
  std::string text;

  bool is_prompt() const noexcept { return !role.has_value(); }
  std::string rendered() const;

  friend bool operator==(const DialogueUnit&, const DialogueUnit&) = default;
};

struct PromptedDialogue {
  std::string id;
  std::optional<SummaryTarget> target;
  std::vector<DialogueUnit> units;
  std::map<SummaryTarget, std::string> references;

  bool has_prompt() const noexcept { return target.has_value(); }
  // Number of real utterances (units excluding the prompt).
  std::size_t content_size() const noexcept { return units.size() - (has_prompt() ? 1 : 0); }
  // Unit with the given index; throws PreconditionError if absent.
  const DialogueUnit& unit(std::size_t index) const;

  friend bool operator==(const PromptedDialogue&, const PromptedDialogue&) = default;
};

PromptedDialogue attach_role_prompt(const Dialogue& dialogue, SummaryTarget target);
// Same unit layout without the prompt: utterances occupy units 1..N.
PromptedDialogue without_prompt(const Dialogue& dialogue);
// Inverse of attach_role_prompt / without_prompt.
Dialogue strip_role_prompt(const PromptedDialogue& prompted);

enum class TokenizerMode { kWords, kChars };

struct TokenizerConfig {
  TokenizerMode mode = TokenizerMode::kWords;
  bool lowercase = true;
  std::size_t max_tokens = 512;
};

// Tokens [begin, end) of the flat stream belong to unit `unit`.
struct UtteranceSpan {
  std::size_t unit = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }

  friend bool operator==(const UtteranceSpan&, const UtteranceSpan&) = default;
};

struct TokenizedDialogue {
  std::vector<std::string> tokens;
  std::vector<UtteranceSpan> spans;
  bool prompt_attached = false;
  // Content utterances dropped or cut short by the token budget.
  bool truncated = false;

  std::size_t size() const noexcept { return tokens.size(); }
  // Position of the span holding `unit`, or nullopt if it was truncated away.
  std::optional<std::size_t> span_of(std::size_t unit) const;

  friend bool operator==(const TokenizedDialogue&, const TokenizedDialogue&) = default;
};

// Splits free text according to the tokenizer mode (no role handling, no
// budget). Words mode splits on ASCII whitespace; chars mode yields one token
// per UTF-8 code point, skipping whitespace.
std::vector<std::string> tokenize_text(std::string_view text, const TokenizerConfig& config);

// Tokenizes a single unit. Words mode emits "role:" as its own token followed
// by the sentence words; chars mode splits the rendered "role:sentence".
std::vector<std::string> tokenize_unit(const DialogueUnit& unit, const TokenizerConfig& config);

// Throws BudgetError when the budget cannot hold the prompt plus at least
// one token of the first utterance; ConfigError when max_tokens is 0.
TokenizedDialogue tokenize(const PromptedDialogue& prompted, const TokenizerConfig& config);

}  // namespace glc
