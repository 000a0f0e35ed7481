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

#include "glc/dialogue.hpp"

#include <algorithm>
#include <istream>
#include <utility>

#include <json.hpp>

#include "glc/error.hpp"

namespace glc {

namespace {

using nlohmann::json;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string ascii_lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

// Byte length of the UTF-8 sequence introduced by `lead`; stray continuation
// or invalid bytes count as one.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

const std::string& require_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ValidationError(std::string("field \"") + key + "\" must be a string");
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

Role::Role(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw ValidationError("role name is empty");
  if (name_.find(':') != std::string::npos) {
    throw ValidationError("role name \"" + name_ + "\" contains ':'");
  }
}

std::string Utterance::rendered() const { return role.name() + ":" + sentence; }

std::string_view prompt_text(SummaryTarget target) {
  switch (target) {
    case SummaryTarget::kUser:
      return "[User Summary]";
    case SummaryTarget::kAgent:
      return "[Agent Summary]";
    case SummaryTarget::kFinal:
      return "[Final Summary]";
  }
  return {};
}

std::string_view target_name(SummaryTarget target) {
  switch (target) {
    case SummaryTarget::kUser:
      return "user";
    case SummaryTarget::kAgent:
      return "agent";
    case SummaryTarget::kFinal:
      return "final";
  }
  return {};
}

std::optional<SummaryTarget> parse_target(std::string_view name) {
  if (name == "user") return SummaryTarget::kUser;
  if (name == "agent") return SummaryTarget::kAgent;
  if (name == "final") return SummaryTarget::kFinal;
  return std::nullopt;
}

void validate(const Dialogue& dialogue) {
  if (dialogue.utterances.empty()) {
    throw ValidationError("dialogue \"" + dialogue.id + "\" has no utterances");
  }
  for (std::size_t i = 0; i < dialogue.utterances.size(); ++i) {
    if (dialogue.utterances[i].index != i) {
      throw ValidationError("dialogue \"" + dialogue.id + "\" has non-contiguous utterance indices");
    }
  }
}

Dialogue parse_dialogue_json(std::string_view line) {
  json obj = json::parse(line);  // json::parse_error escapes to the caller
  if (!obj.is_object()) throw ValidationError("record is not a JSON object");

  Dialogue dialogue;
  dialogue.id = require_string(obj, "id");

  auto utts = obj.find("utterances");
  if (utts == obj.end() || !utts->is_array()) {
    throw ValidationError("field \"utterances\" must be an array");
  }
  for (const auto& u : *utts) {
    if (!u.is_object()) throw ValidationError("utterance is not an object");
    dialogue.utterances.push_back(
        Utterance{Role(require_string(u, "role")), require_string(u, "text"), dialogue.utterances.size()});
  }

  if (auto refs = obj.find("references"); refs != obj.end() && !refs->is_null()) {
    if (!refs->is_object()) throw ValidationError("field \"references\" must be an object");
    for (const auto& [key, value] : refs->items()) {
      auto target = parse_target(key);
      if (!target) throw ValidationError("unknown reference target \"" + key + "\"");
      if (!value.is_string()) throw ValidationError("reference \"" + key + "\" must be a string");
      dialogue.references.emplace(*target, value.get<std::string>());
    }
  }

  validate(dialogue);
  return dialogue;
}

std::vector<DialogueRecord> read_dialogue_records(std::istream& in) {
  std::vector<DialogueRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) blank = blank && is_space(c);
    if (blank) continue;

    DialogueRecord record;
    record.line = line_no;
    try {
      record.dialogue = parse_dialogue_json(line);
    } catch (const nlohmann::json::exception& e) {
      record.error = ParseError(line_no, e.what()).what();
    } catch (const Error& e) {
      record.error = "line " + std::to_string(line_no) + ": " + e.what();
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<Dialogue> parse_dialogues(std::istream& in) {
  std::vector<Dialogue> dialogues;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char c : line) blank = blank && is_space(c);
    if (blank) continue;
    try {
      dialogues.push_back(parse_dialogue_json(line));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return dialogues;
}

std::string DialogueUnit::rendered() const {
  if (is_prompt()) return text;
  return role->name() + ":" + text;
}

const DialogueUnit& PromptedDialogue::unit(std::size_t index) const {
  const std::size_t offset = has_prompt() ? 0 : 1;
  if (index < offset || index - offset >= units.size()) {
    throw PreconditionError("unit index " + std::to_string(index) + " out of range");
  }
  return units[index - offset];
}

PromptedDialogue attach_role_prompt(const Dialogue& dialogue, SummaryTarget target) {
  PromptedDialogue prompted = without_prompt(dialogue);
  prompted.target = target;
  prompted.units.insert(prompted.units.begin(), DialogueUnit{0, std::nullopt, std::string(prompt_text(target))});
  return prompted;
}

PromptedDialogue without_prompt(const Dialogue& dialogue) {
  PromptedDialogue prompted;
  prompted.id = dialogue.id;
  prompted.references = dialogue.references;
  prompted.units.reserve(dialogue.utterances.size() + 1);
  for (const auto& u : dialogue.utterances) {
    prompted.units.push_back(DialogueUnit{u.index + 1, u.role, u.sentence});
  }
  return prompted;
}

Dialogue strip_role_prompt(const PromptedDialogue& prompted) {
  Dialogue dialogue;
  dialogue.id = prompted.id;
  dialogue.references = prompted.references;
  for (const auto& unit : prompted.units) {
    if (unit.is_prompt()) continue;
    dialogue.utterances.push_back(Utterance{*unit.role, unit.text, unit.index - 1});
  }
  return dialogue;
}

std::optional<std::size_t> TokenizedDialogue::span_of(std::size_t unit) const {
  for (std::size_t s = 0; s < spans.size(); ++s) {
    if (spans[s].unit == unit) return s;
  }
  return std::nullopt;
}

std::vector<std::string> tokenize_text(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> tokens;
  if (config.mode == TokenizerMode::kWords) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      const std::size_t start = i;
      while (i < text.size() && !is_space(text[i])) ++i;
      if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
  } else {
    std::size_t i = 0;
    while (i < text.size()) {
      const std::size_t len = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
      if (!(len == 1 && is_space(text[i]))) tokens.emplace_back(text.substr(i, len));
      i += len;
    }
  }
  if (config.lowercase) {
    for (auto& t : tokens) t = ascii_lower(std::move(t));
  }
  return tokens;
}

std::vector<std::string> tokenize_unit(const DialogueUnit& unit, const TokenizerConfig& config) {
  if (unit.is_prompt() || config.mode == TokenizerMode::kChars) {
    return tokenize_text(unit.rendered(), config);
  }
  std::vector<std::string> tokens;
  tokens.push_back(config.lowercase ? ascii_lower(unit.role->name() + ":") : unit.role->name() + ":");
  for (auto& t : tokenize_text(unit.text, config)) tokens.push_back(std::move(t));
  return tokens;
}

TokenizedDialogue tokenize(const PromptedDialogue& prompted, const TokenizerConfig& config) {
  if (config.max_tokens == 0) throw ConfigError("max_tokens must be positive");

  TokenizedDialogue out;
  out.prompt_attached = prompted.has_prompt();
  std::size_t content_spans = 0;

  for (const auto& unit : prompted.units) {
    const std::size_t remaining = config.max_tokens - out.tokens.size();
    if (remaining == 0) {
      out.truncated = true;
      break;
    }
    auto tokens = tokenize_unit(unit, config);
    if (tokens.size() > remaining) {
      if (unit.is_prompt()) throw BudgetError();
      tokens.resize(remaining);
      out.truncated = true;
    }
    const std::size_t begin = out.tokens.size();
    for (auto& t : tokens) out.tokens.push_back(std::move(t));
    out.spans.push_back(UtteranceSpan{unit.index, begin, out.tokens.size()});
    if (!unit.is_prompt()) ++content_spans;
    if (out.truncated) break;
  }

  if (content_spans == 0) throw BudgetError();
  return out;
}

}  // namespace glc
