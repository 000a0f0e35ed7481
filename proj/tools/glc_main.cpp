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

// glc: GLC-ranked extractive dialogue summaries.
//
//   glc run --input dialogues.jsonl --target final --top-k 3 --diagnostics
//
// Exit status: 0 when every dialogue succeeded, 1 when any dialogue failed
// (it is reported on stderr and skipped), 2 on a configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "glc/error.hpp"
#include "glc/pipeline.hpp"

namespace {

constexpr int kExitDialogueFailure = 1;
constexpr int kExitConfigError = 2;

struct RunOptions {
  std::string input;
  std::string target = "none";
  double lambda = glc::kDefaultLambda;
  std::optional<std::size_t> top_k;
  std::optional<std::size_t> budget_tokens;
  std::string embedder = "hashed:64:0";
  std::string missing_token = "error";
  std::string tokenizer = "words";
  bool keep_case = false;
  std::size_t max_tokens = 512;
  std::uint64_t seed = 0;
  std::string init = "points";
  std::size_t max_iters = 50;
  double tol = 1e-6;
  std::string normalization = "per-cluster";
  std::string similarity = "dot";
  bool clamp_nonnegative = false;
  bool diagnostics = false;
  std::string output;
  std::string dump_blended;
};

glc::PipelineConfig to_config(const RunOptions& opt) {
  glc::PipelineConfig config;
  if (opt.target != "none") {
    config.target = glc::parse_target(opt.target);
    if (!config.target) throw glc::ConfigError("unknown target \"" + opt.target + "\"");
  }
  config.lambda = opt.lambda;
  config.selection.top_k = opt.top_k;
  config.selection.budget_tokens = opt.budget_tokens;
  if (!opt.top_k && !opt.budget_tokens) config.selection.top_k = 3;

  config.embedder = glc::parse_embedder_spec(opt.embedder);
  if (auto* table = std::get_if<glc::TableEmbedderSpec>(&config.embedder)) {
    table->missing = opt.missing_token == "zero" ? glc::MissingTokenPolicy::kZero : glc::MissingTokenPolicy::kError;
  }

  config.tokenizer.mode = opt.tokenizer == "chars" ? glc::TokenizerMode::kChars : glc::TokenizerMode::kWords;
  config.tokenizer.lowercase = !opt.keep_case;
  config.tokenizer.max_tokens = opt.max_tokens;

  config.clustering.seed = opt.seed;
  config.clustering.init = opt.init == "plusplus" ? glc::ClusterInit::kPlusPlus : glc::ClusterInit::kDataPoints;
  config.clustering.max_iters = opt.max_iters;
  config.clustering.tol = opt.tol;

  config.centrality.scope = opt.normalization == "per-dialogue" ? glc::NormalizationScope::kPerDialogue
                                                                : glc::NormalizationScope::kPerCluster;
  config.centrality.similarity = opt.similarity == "cosine" ? glc::Similarity::kCosine : glc::Similarity::kDot;
  config.centrality.clamp_nonnegative = opt.clamp_nonnegative;

  config.diagnostics = opt.diagnostics;
  if (!opt.dump_blended.empty()) config.dump_dir = opt.dump_blended;
  glc::validate(config);
  return config;
}

int run(const RunOptions& opt) {
  glc::PipelineConfig config;
  std::ifstream input;
  try {
    config = to_config(opt);
    input.open(opt.input, std::ios::binary);
    if (!input) throw glc::ConfigError("cannot open input " + opt.input);
  } catch (const glc::Error& e) {
    std::cerr << "glc: config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  glc::PipelineOutput output;
  try {
    output = glc::run_pipeline(input, config);
  } catch (const glc::ConfigError& e) {
    std::cerr << "glc: config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "glc: config error: cannot open output " << opt.output << "\n";
      return kExitConfigError;
    }
  }
  std::ostream& out = opt.output.empty() ? std::cout : file;

  for (const auto& result : output.results) {
    if (!result.ok()) {
      std::cerr << "glc: skipped dialogue" << (result.id.empty() ? "" : " \"" + result.id + "\"") << ": "
                << *result.error << "\n";
      continue;
    }
    out << glc::format_result(result, config.diagnostics) << "\n";
  }
  out.flush();
  return output.has_failures() ? kExitDialogueFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic-aware global-local centrality for dialogue summarization"};
  app.require_subcommand(1);

  RunOptions opt;
  auto* cmd = app.add_subcommand("run", "Rank utterances by GLC weight and emit extractive summaries as JSONL");
  cmd->add_option("--input", opt.input, "Dialogue JSONL file")->required();
  cmd->add_option("--target", opt.target, "Role prompt / summary target")
      ->check(CLI::IsMember({"user", "agent", "final", "none"}))
      ->capture_default_str();
  cmd->add_option("--lambda", opt.lambda, "Blend between re-weighted and original token vectors")
      ->capture_default_str();
  auto* top_k = cmd->add_option("--top-k", opt.top_k, "Number of utterances to select (default 3)");
  auto* budget = cmd->add_option("--budget-tokens", opt.budget_tokens, "Token budget for the selection");
  top_k->excludes(budget);
  cmd->add_option("--embedder", opt.embedder, "hashed:<dim>:<seed> or table:<path>")->capture_default_str();
  cmd->add_option("--missing-token", opt.missing_token, "Table lookups of unknown tokens")
      ->check(CLI::IsMember({"error", "zero"}))
      ->capture_default_str();
  cmd->add_option("--tokenizer", opt.tokenizer, "Tokenization mode")
      ->check(CLI::IsMember({"words", "chars"}))
      ->capture_default_str();
  cmd->add_flag("--keep-case", opt.keep_case, "Do not lowercase tokens");
  cmd->add_option("--max-tokens", opt.max_tokens, "Input token budget per dialogue")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Clustering seed (k-means++ init only)")->capture_default_str();
  cmd->add_option("--init", opt.init, "K-Means initialization")
      ->check(CLI::IsMember({"points", "plusplus"}))
      ->capture_default_str();
  cmd->add_option("--max-iters", opt.max_iters, "Lloyd iteration cap")->capture_default_str();
  cmd->add_option("--tol", opt.tol, "Center movement tolerance")->capture_default_str();
  cmd->add_option("--normalization", opt.normalization, "Local score normalization scope")
      ->check(CLI::IsMember({"per-cluster", "per-dialogue"}))
      ->capture_default_str();
  cmd->add_option("--similarity", opt.similarity, "Edge weight between nodes")
      ->check(CLI::IsMember({"dot", "cosine"}))
      ->capture_default_str();
  cmd->add_flag("--clamp-nonnegative", opt.clamp_nonnegative, "Clamp GLC weights at zero");
  cmd->add_flag("--diagnostics", opt.diagnostics, "Include the clustering/centrality trace");
  cmd->add_option("--output", opt.output, "Output JSONL path (default stdout)");
  cmd->add_option("--dump-blended", opt.dump_blended, "Directory for binary blended token matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }
  return run(opt);
}
