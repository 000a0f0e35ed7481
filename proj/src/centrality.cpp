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

#include "glc/centrality.hpp"

#include <algorithm>
#include <cmath>

#include "glc/error.hpp"

namespace glc {

namespace {

double similarity(std::span<const double> a, std::span<const double> b, Similarity kind) {
  const double d = dot(a, b);
  if (kind == Similarity::kDot) return d;
  const double denom = l2_norm(a) * l2_norm(b);
  return denom > 0.0 ? d / denom : 0.0;
}

}  // namespace

bool normalize_or_uniform(std::span<double> values) {
  if (values.empty()) return false;
  const double norm = l2_norm(values);
  if (!(norm > kDegenerateNorm) || !std::isfinite(norm)) {
    std::fill(values.begin(), values.end(), 1.0 / std::sqrt(static_cast<double>(values.size())));
    return true;
  }
  for (double& v : values) v /= norm;
  return false;
}

GlobalScores global_centrality(const Matrix& centers, Similarity kind) {
  if (centers.rows() == 0) throw PreconditionError("global_centrality needs at least one center");
  if (!centers.all_finite()) throw ValidationError("centers contain non-finite entries");

  GlobalScores out;
  out.scores.assign(centers.rows(), 0.0);
  for (std::size_t k = 0; k < centers.rows(); ++k) {
    for (std::size_t j = 0; j < centers.rows(); ++j) {
      out.scores[k] += similarity(centers.row(k), centers.row(j), kind);
    }
  }
  out.fallback = normalize_or_uniform(out.scores);
  return out;
}

LocalScores local_centrality(const UtteranceEmbeddings& utterances, const ClusterModel& model,
                             const CentralityConfig& config) {
  return local_centrality(utterances.vectors, model, config);
}

LocalScores local_centrality(const Matrix& utterances, const ClusterModel& model, const CentralityConfig& config) {
  const std::size_t n = utterances.rows();
  if (model.assignments.size() != n) throw ValidationError("assignments do not cover every utterance");
  for (std::size_t a : model.assignments) {
    if (a >= model.k()) throw ValidationError("assignment index out of range");
  }
  if (!utterances.all_finite()) throw ValidationError("utterance vectors contain non-finite entries");

  LocalScores out;
  out.scores.assign(n, 0.0);
  out.fallback.assign(model.k(), false);

  // Grouped by the assignments rather than model.members so a hand-built
  // model only needs consistent assignments.
  std::vector<std::vector<std::size_t>> groups(model.k());
  for (std::size_t i = 0; i < n; ++i) groups[model.assignments[i]].push_back(i);

  for (const auto& group : groups) {
    for (std::size_t i : group) {
      for (std::size_t j : group) out.scores[i] += similarity(utterances.row(i), utterances.row(j), config.similarity);
    }
  }

  if (config.scope == NormalizationScope::kPerDialogue) {
    const bool flag = normalize_or_uniform(out.scores);
    std::fill(out.fallback.begin(), out.fallback.end(), flag);
    return out;
  }

  for (std::size_t k = 0; k < groups.size(); ++k) {
    std::vector<double> sub;
    sub.reserve(groups[k].size());
    for (std::size_t i : groups[k]) sub.push_back(out.scores[i]);
    out.fallback[k] = normalize_or_uniform(sub);
    for (std::size_t m = 0; m < groups[k].size(); ++m) out.scores[groups[k][m]] = sub[m];
  }
  return out;
}

std::vector<double> glc_weights(std::span<const double> global_scores, std::span<const double> local_scores,
                                const ClusterModel& model, bool clamp_nonnegative) {
  if (global_scores.size() != model.k()) throw ValidationError("global score count does not match cluster count");
  if (local_scores.size() != model.assignments.size()) {
    throw ValidationError("local score count does not match utterance count");
  }
  std::vector<double> weights(local_scores.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::size_t k = model.assignments[i];
    if (k >= global_scores.size()) throw ValidationError("assignment index out of range");
    weights[i] = local_scores[i] * global_scores[k];
    if (clamp_nonnegative) weights[i] = std::max(weights[i], 0.0);
  }
  return weights;
}

GlcScores score_utterances(const UtteranceEmbeddings& utterances, const ClusterModel& model,
                           const CentralityConfig& config) {
  auto global = global_centrality(model.centers, config.similarity);
  auto local = local_centrality(utterances, model, config);
  GlcScores out;
  out.weights = glc_weights(global.scores, local.scores, model, config.clamp_nonnegative);
  out.global_scores = std::move(global.scores);
  out.global_fallback = global.fallback;
  out.local_scores = std::move(local.scores);
  out.local_fallback = std::move(local.fallback);
  return out;
}

}  // namespace glc
