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

#include "glc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "glc/error.hpp"

namespace glc {

namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::map<Gram, std::size_t> counts;
  if (n == 0 || tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++counts[Gram(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

// Matches clipped by the reference multiset, and total candidate n-grams.
std::pair<std::size_t, std::size_t> clipped_overlap(std::span<const std::string> candidate,
                                                    std::span<const std::string> reference, std::size_t n) {
  const auto cand = count_ngrams(candidate, n);
  const auto ref = count_ngrams(reference, n);
  std::size_t matches = 0;
  std::size_t total = 0;
  for (const auto& [gram, count] : cand) {
    total += count;
    if (auto it = ref.find(gram); it != ref.end()) matches += std::min(count, it->second);
  }
  return {matches, total};
}

PrfScore make_prf(double overlap, double cand_total, double ref_total) {
  PrfScore s;
  s.precision = cand_total > 0 ? overlap / cand_total : 0.0;
  s.recall = ref_total > 0 ? overlap / ref_total : 0.0;
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

}  // namespace

PrfScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference, int n) {
  if (n != 1 && n != 2) throw PreconditionError("rouge_n supports n = 1 or 2");
  const auto un = static_cast<std::size_t>(n);
  const auto [matches, cand_total] = clipped_overlap(candidate, reference, un);
  const std::size_t ref_total = reference.size() >= un ? reference.size() - un + 1 : 0;
  return make_prf(static_cast<double>(matches), static_cast<double>(cand_total), static_cast<double>(ref_total));
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

PrfScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  return make_prf(lcs, static_cast<double>(candidate.size()), static_cast<double>(reference.size()));
}

double bleu(std::span<const std::string> candidate, std::span<const std::string> reference, int max_n) {
  if (max_n < 1) throw PreconditionError("bleu needs max_n >= 1");
  if (candidate.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto [matches, total] = clipped_overlap(candidate, reference, static_cast<std::size_t>(n));
    double p = 0.0;
    if (matches > 0) {
      p = static_cast<double>(matches) / static_cast<double>(total);
    } else if (n >= 2) {
      p = 1.0 / (static_cast<double>(total) + 1.0);
    } else {
      return 0.0;
    }
    log_sum += std::log(p);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
  return std::clamp(bp * std::exp(log_sum / max_n), 0.0, 1.0);
}

double novel_ngram_ratio(std::span<const std::string> summary, std::span<const std::string> source, int n) {
  const Tokens s(summary.begin(), summary.end());
  const Tokens src(source.begin(), source.end());
  return novel_ngram_ratio(std::span<const Tokens>(&s, 1), std::span<const Tokens>(&src, 1), n);
}

double novel_ngram_ratio(std::span<const Tokens> summary, std::span<const Tokens> source, int n) {
  if (n < 1) throw PreconditionError("novel_ngram_ratio needs n >= 1");
  const auto un = static_cast<std::size_t>(n);

  std::set<Gram> known;
  for (const auto& seg : source) {
    for (std::size_t i = 0; i + un <= seg.size(); ++i) known.emplace(seg.begin() + i, seg.begin() + i + un);
  }
  std::size_t total = 0;
  std::size_t novel = 0;
  for (const auto& seg : summary) {
    for (std::size_t i = 0; i + un <= seg.size(); ++i) {
      ++total;
      if (!known.contains(Gram(seg.begin() + i, seg.begin() + i + un))) ++novel;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(novel) / static_cast<double>(total);
}

MetricsReport evaluate_summary(std::span<const Tokens> candidate, std::span<const std::string> reference,
                               std::span<const Tokens> source) {
  Tokens flat;
  for (const auto& seg : candidate) flat.insert(flat.end(), seg.begin(), seg.end());

  MetricsReport r;
  r.rouge1_f = rouge_n(flat, reference, 1).f1;
  r.rouge2_f = rouge_n(flat, reference, 2).f1;
  r.rougeL_f = rouge_l(flat, reference).f1;
  r.bleu = bleu(flat, reference);
  for (int n = 1; n <= 4; ++n) r.novel_ngram_ratio[n] = novel_ngram_ratio(candidate, source, n);
  return r;
}

}  // namespace glc
