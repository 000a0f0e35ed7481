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

#include "glc/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>

#include <json.hpp>

#include "glc/error.hpp"

namespace glc {

namespace {

using nlohmann::ordered_json;

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
    if (lower(a[i]) != lower(b[i])) return false;
  }
  return true;
}

template <typename T>
T parse_unsigned(std::string_view text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string("invalid ") + what + ": \"" + std::string(text) + "\"");
  }
  return value;
}

std::string dump_name(std::size_t ordinal, const std::string& id) {
  std::string safe;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    safe.push_back(ok ? c : '_');
  }
  return std::to_string(ordinal) + "_" + safe + ".bin";
}

ordered_json target_json(const std::optional<SummaryTarget>& target) {
  return target ? ordered_json(std::string(target_name(*target))) : ordered_json("none");
}

}  // namespace

ExtractiveSummary select_salient(std::span<const Candidate> candidates, const PromptedDialogue& dialogue,
                                 const SelectionConfig& config) {
  ExtractiveSummary out;
  out.dialogue_id = dialogue.id;
  out.target = config.target;

  std::vector<Candidate> eligible;
  for (const auto& c : candidates) {
    if (c.index == 0) continue;
    const auto& unit = dialogue.unit(c.index);
    if (unit.is_prompt()) continue;
    if (config.target && *config.target != SummaryTarget::kFinal &&
        !iequals(unit.role->name(), target_name(*config.target))) {
      continue;
    }
    eligible.push_back(c);
  }
  std::stable_sort(eligible.begin(), eligible.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.index < b.index;
  });
  for (const auto& c : eligible) out.ranking.push_back(c.index);

  std::vector<Candidate> chosen;
  if (config.budget_tokens) {
    std::size_t used = 0;
    for (const auto& c : eligible) {
      if (used + c.tokens > *config.budget_tokens) break;
      used += c.tokens;
      chosen.push_back(c);
    }
    out.budget_warning = chosen.empty() && !eligible.empty();
  } else {
    const std::size_t k = std::min(config.top_k.value_or(eligible.size()), eligible.size());
    chosen.assign(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(k));
  }

  std::sort(chosen.begin(), chosen.end(), [](const Candidate& a, const Candidate& b) { return a.index < b.index; });
  for (const auto& c : chosen) {
    const auto& unit = dialogue.unit(c.index);
    out.selected.push_back(SelectedUtterance{c.index, unit.role->name(), unit.text, c.weight});
  }
  return out;
}

EmbedderSpec parse_embedder_spec(std::string_view text) {
  if (text.starts_with("hashed:")) {
    const auto rest = text.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ConfigError("embedder spec must be hashed:<dim>:<seed>");
    HashedEmbedderSpec spec;
    spec.dimension = parse_unsigned<std::size_t>(rest.substr(0, colon), "embedder dimension");
    spec.seed = parse_unsigned<std::uint64_t>(rest.substr(colon + 1), "embedder seed");
    if (spec.dimension < 2) throw ConfigError("hashed embedder dimension must be >= 2");
    return spec;
  }
  if (text.starts_with("table:")) {
    if (text.size() == 6) throw ConfigError("embedder spec must be table:<path>");
    return TableEmbedderSpec{std::filesystem::path(std::string(text.substr(6)))};
  }
  throw ConfigError("unknown embedder spec \"" + std::string(text) + "\"");
}

void validate(const PipelineConfig& config) {
  if (!(config.lambda >= 0.0 && config.lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  const auto& sel = config.selection;
  if (sel.top_k.has_value() == sel.budget_tokens.has_value()) {
    throw ConfigError("exactly one of top_k and budget_tokens must be set");
  }
  if (sel.top_k && *sel.top_k == 0) throw ConfigError("top_k must be positive");
  if (sel.budget_tokens && *sel.budget_tokens == 0) throw ConfigError("budget_tokens must be positive");
  if (config.tokenizer.max_tokens == 0) throw ConfigError("max_tokens must be positive");
  if (config.clustering.max_iters == 0) throw ConfigError("max_iters must be >= 1");
  if (!(config.clustering.tol >= 0.0)) throw ConfigError("tol must be non-negative");
  if (const auto* h = std::get_if<HashedEmbedderSpec>(&config.embedder); h && h->dimension < 2) {
    throw ConfigError("hashed embedder dimension must be >= 2");
  }
}

PreparedDialogue prepare_dialogue(const Dialogue& dialogue, const PipelineConfig& config) {
  PreparedDialogue out;
  out.prompted = config.target ? attach_role_prompt(dialogue, *config.target) : without_prompt(dialogue);
  out.tokenized = tokenize(out.prompted, config.tokenizer);
  return out;
}

EmbeddingProvider make_embedder(const PipelineConfig& config, std::span<const TokenizedDialogue> corpus) {
  if (const auto* h = std::get_if<HashedEmbedderSpec>(&config.embedder)) {
    return build_hashed_embedder(corpus, h->dimension, h->seed);
  }
  const auto& t = std::get<TableEmbedderSpec>(config.embedder);
  try {
    return load_external_vectors(t.path, t.missing);
  } catch (const FormatError& e) {
    throw ConfigError(e.what());
  }
}

DialogueResult summarize(const PreparedDialogue& prepared, const EmbeddingProvider& provider,
                         const PipelineConfig& config) {
  const auto& tokenized = prepared.tokenized;

  const auto tokens = embed_tokens(tokenized, provider);
  const auto utterances = average_utterances(tokens, tokenized);
  auto clusters = fit_subtopics(utterances, config.clustering);
  auto scores = score_utterances(utterances, clusters, config.centrality);

  DialogueResult result;
  result.id = prepared.prompted.id;
  result.representation = apply_glc(tokens, scores.weights, tokenized, config.lambda);

  std::vector<Candidate> candidates;
  for (std::size_t s = 0; s < tokenized.spans.size(); ++s) {
    candidates.push_back(Candidate{tokenized.spans[s].unit, scores.weights[s], tokenized.spans[s].size()});
  }
  SelectionConfig selection = config.selection;
  selection.target = config.target;
  result.summary = select_salient(candidates, prepared.prompted, selection);

  const SummaryTarget ref_target = config.target.value_or(SummaryTarget::kFinal);
  if (auto it = prepared.prompted.references.find(ref_target); it != prepared.prompted.references.end()) {
    std::vector<Tokens> candidate_segments;
    for (const auto& sel : result.summary->selected) {
      candidate_segments.push_back(tokenize_text(sel.text, config.tokenizer));
    }
    std::vector<Tokens> source_segments;
    for (const auto& unit : prepared.prompted.units) {
      if (!unit.is_prompt()) source_segments.push_back(tokenize_text(unit.text, config.tokenizer));
    }
    const auto reference = tokenize_text(it->second, config.tokenizer);
    result.metrics = evaluate_summary(candidate_segments, reference, source_segments);
    result.metrics_reference = ref_target;
  }

  Trace trace;
  trace.units = utterances.units;
  trace.utterance_salience = effective_token_salience(scores.weights, config.lambda);
  trace.token_count = tokenized.size();
  trace.truncated = tokenized.truncated;
  trace.clusters = std::move(clusters);
  trace.scores = std::move(scores);
  result.trace = std::move(trace);
  return result;
}

bool PipelineOutput::has_failures() const noexcept {
  return std::any_of(results.begin(), results.end(), [](const DialogueResult& r) { return !r.ok(); });
}

PipelineOutput run_pipeline(std::istream& input, const PipelineConfig& config) {
  validate(config);

  PipelineOutput out;
  auto records = read_dialogue_records(input);

  // Tokenize everything first: the hashed provider needs the whole corpus.
  std::vector<std::optional<PreparedDialogue>> prepared(records.size());
  std::vector<TokenizedDialogue> corpus;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (!records[r].dialogue) continue;
    try {
      prepared[r] = prepare_dialogue(*records[r].dialogue, config);
      corpus.push_back(prepared[r]->tokenized);
    } catch (const Error& e) {
      records[r].error = "line " + std::to_string(records[r].line) + ": " + e.what();
    }
  }

  std::optional<EmbeddingProvider> provider;
  if (!corpus.empty() || std::holds_alternative<TableEmbedderSpec>(config.embedder)) {
    provider = make_embedder(config, corpus);
  }

  if (config.dump_dir) std::filesystem::create_directories(*config.dump_dir);

  for (std::size_t r = 0; r < records.size(); ++r) {
    DialogueResult result;
    if (prepared[r]) {
      try {
        result = summarize(*prepared[r], *provider, config);
        if (config.dump_dir) {
          write_matrix_binary(*config.dump_dir / dump_name(r, result.id), result.representation.blended);
        }
      } catch (const Error& e) {
        result = DialogueResult{};
        result.error = "line " + std::to_string(records[r].line) + ": " + e.what();
      }
    } else {
      result.error = records[r].error;
    }
    result.line = records[r].line;
    if (records[r].dialogue) result.id = records[r].dialogue->id;
    out.results.push_back(std::move(result));
  }
  return out;
}

std::string format_result(const DialogueResult& result, bool diagnostics) {
  if (!result.ok() || !result.summary) throw PreconditionError("cannot format a failed dialogue");
  const auto& summary = *result.summary;

  ordered_json rec;
  rec["id"] = result.id;
  rec["target"] = target_json(summary.target);

  ordered_json selected = ordered_json::array();
  for (const auto& s : summary.selected) {
    selected.push_back({{"index", s.index}, {"role", s.role}, {"text", s.text}, {"weight", s.weight}});
  }
  rec["selected"] = std::move(selected);
  if (summary.budget_warning) rec["warnings"] = ordered_json::array({"budget_smaller_than_every_utterance"});

  if (result.metrics) {
    const auto& m = *result.metrics;
    ordered_json novel = ordered_json::object();
    for (const auto& [n, v] : m.novel_ngram_ratio) novel[std::to_string(n)] = v;
    rec["metrics"] = {{"reference", std::string(target_name(*result.metrics_reference))},
                      {"rouge1_f", m.rouge1_f},
                      {"rouge2_f", m.rouge2_f},
                      {"rougeL_f", m.rougeL_f},
                      {"bleu", m.bleu},
                      {"novel_ngram_ratio", std::move(novel)}};
  }

  if (diagnostics && result.trace) {
    const auto& t = *result.trace;
    ordered_json centers = ordered_json::array();
    for (std::size_t k = 0; k < t.clusters.k(); ++k) {
      const auto row = t.clusters.centers.row(k);
      centers.push_back(std::vector<double>(row.begin(), row.end()));
    }
    std::vector<bool> local_flags(t.scores.local_fallback.begin(), t.scores.local_fallback.end());
    rec["trace"] = {
        {"units", t.units},
        {"clusters",
         {{"centers_k", t.clusters.k()},
          {"assignments", t.clusters.assignments},
          {"centers", std::move(centers)},
          {"iterations", t.clusters.iterations_run},
          {"objective", t.clusters.objective}}},
        {"global_scores", t.scores.global_scores},
        {"local_scores", t.scores.local_scores},
        {"weights", t.scores.weights},
        {"fallbacks", {{"global", t.scores.global_fallback}, {"local", local_flags}}},
        {"lambda", result.representation.lambda},
        {"utterance_salience", t.utterance_salience},
        {"ranking", summary.ranking},
        {"token_count", t.token_count},
        {"truncated", t.truncated},
    };
  }
  return rec.dump();
}

}  // namespace glc
