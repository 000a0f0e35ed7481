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

// End-to-end extractive summarization with GLC salience:
// parse -> prompt -> tokenize -> embed -> span means -> sub-topic clustering
// -> global/local centrality -> GLC weights -> token re-weighting and blend
// -> rank utterances by weight -> lexical metrics against references.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glc/centrality.hpp"
#include "glc/clustering.hpp"
#include "glc/dialogue.hpp"
#include "glc/embedding.hpp"
#include "glc/metrics.hpp"
#include "glc/reweighting.hpp"

namespace glc {

struct SelectionConfig {
  std::optional<SummaryTarget> target;
  // Exactly one of these is set once the config is validated.
  std::optional<std::size_t> top_k;
  std::optional<std::size_t> budget_tokens;
};

struct Candidate {
  std::size_t index = 0;  // unit index; 0 is the prompt and never selected
  double weight = 0.0;
  std::size_t tokens = 0;
};

struct SelectedUtterance {
  std::size_t index = 0;
  std::string role;
  std::string text;
  double weight = 0.0;
};

struct ExtractiveSummary {
  std::string dialogue_id;
  std::optional<SummaryTarget> target;
  std::vector<SelectedUtterance> selected;  // dialogue order
  std::vector<std::size_t> ranking;         // eligible unit indices, best first
  // Token budget was smaller than every eligible utterance.
  bool budget_warning = false;
};

// User/agent targets keep only utterances spoken by that role (case-
// insensitive); final or no target keeps every utterance.
ExtractiveSummary select_salient(std::span<const Candidate> candidates, const PromptedDialogue& dialogue,
                                 const SelectionConfig& config);

struct HashedEmbedderSpec {
  std::size_t dimension = 64;
  std::uint64_t seed = 0;
};

struct TableEmbedderSpec {
  std::filesystem::path path;
  MissingTokenPolicy missing = MissingTokenPolicy::kError;
};

using EmbedderSpec = std::variant<HashedEmbedderSpec, TableEmbedderSpec>;

// "hashed:<dim>:<seed>" or "table:<path>". Throws ConfigError.
EmbedderSpec parse_embedder_spec(std::string_view text);

struct PipelineConfig {
  std::optional<SummaryTarget> target;
  double lambda = kDefaultLambda;
  SelectionConfig selection;  // its target is overridden by `target`
  EmbedderSpec embedder = HashedEmbedderSpec{};
  TokenizerConfig tokenizer;
  ClusterConfig clustering;
  CentralityConfig centrality;
  bool diagnostics = false;
  std::optional<std::filesystem::path> dump_dir;  // blended matrices, one file per dialogue
};

// Throws ConfigError on out-of-range lambda, both/neither selection budget,
// zero budgets, or bad clustering limits.
void validate(const PipelineConfig& config);

struct Trace {
  std::vector<std::size_t> units;
  ClusterModel clusters;
  GlcScores scores;
  std::vector<double> utterance_salience;  // lambda * w + (1 - lambda), per unit row
  std::size_t token_count = 0;
  bool truncated = false;
};

struct DialogueResult {
  std::size_t line = 0;
  std::string id;
  std::optional<ExtractiveSummary> summary;
  std::optional<MetricsReport> metrics;
  std::optional<SummaryTarget> metrics_reference;
  std::optional<Trace> trace;
  ReweightedRepresentation representation;
  std::optional<std::string> error;

  bool ok() const noexcept { return !error.has_value(); }
};

struct PreparedDialogue {
  PromptedDialogue prompted;
  TokenizedDialogue tokenized;
};

PreparedDialogue prepare_dialogue(const Dialogue& dialogue, const PipelineConfig& config);

// Builds the configured provider; the hashed provider learns idf from
// `corpus`. Throws ConfigError when a table file cannot be loaded.
EmbeddingProvider make_embedder(const PipelineConfig& config, std::span<const TokenizedDialogue> corpus);

// Everything after tokenization for one dialogue. Throws on failure.
DialogueResult summarize(const PreparedDialogue& prepared, const EmbeddingProvider& provider,
                         const PipelineConfig& config);

struct PipelineOutput {
  std::vector<DialogueResult> results;  // input order, failures included

  bool has_failures() const noexcept;
};

PipelineOutput run_pipeline(std::istream& input, const PipelineConfig& config);

// One JSONL record (no trailing newline). Omits "metrics" when the dialogue
// has no matching reference and "trace" unless diagnostics are on.
std::string format_result(const DialogueResult& result, bool diagnostics);

}  // namespace glc
