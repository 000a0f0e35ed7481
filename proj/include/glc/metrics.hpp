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

// Lexical summary metrics over token lists: ROUGE-N, ROUGE-L, sentence BLEU
// and the novel n-gram ratio used as an abstractiveness proxy.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace glc {

using Tokens = std::vector<std::string>;

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Clipped n-gram overlap. Throws PreconditionError unless n is 1 or 2.
PrfScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n);

// Longest-common-subsequence based.
PrfScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

// Geometric mean of clipped precisions for n = 1..max_n times the brevity
// penalty min(1, exp(1 - |ref|/|cand|)). For n >= 2 a zero match count is
// smoothed to 1 / (total + 1). Empty candidate scores 0.
double bleu(std::span<const std::string> candidate, std::span<const std::string> reference, int max_n = 4);

// Fraction of summary n-gram occurrences that never occur in the source.
// Returns 0 when the summary has fewer than n tokens.
double novel_ngram_ratio(std::span<const std::string> summary, std::span<const std::string> source, int n);

// Segmented form: n-grams are taken inside each segment only, never across a
// segment boundary, on both the summary and the source side.
double novel_ngram_ratio(std::span<const Tokens> summary, std::span<const Tokens> source, int n);

struct MetricsReport {
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
  double bleu = 0.0;
  std::map<int, double> novel_ngram_ratio;
};

// Scores a segmented candidate against a flat reference; novelty is measured
// against `source` for n = 1..4.
MetricsReport evaluate_summary(std::span<const Tokens> candidate, std::span<const std::string> reference,
                               std::span<const Tokens> source);

}  // namespace glc
