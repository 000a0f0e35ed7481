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

// Degree centrality over dot-product graphs.
//
// Global: every kept sub-topic center is a node; a center's raw score is the
// sum of its inner products with all centers (itself included), and the score
// vector is L2-normalized.
//
// Local: inside each cluster, an utterance's raw score is the sum of its inner
// products with every member of that cluster (itself included), normalized
// per cluster by default.
//
// The GLC weight of an utterance is its local score times its cluster's
// global score.

#include <cstddef>
#include <span>
#include <vector>

#include "glc/clustering.hpp"
#include "glc/embedding.hpp"
#include "glc/matrix.hpp"

namespace glc {

// Norms at or below this are treated as degenerate and replaced by the
// uniform vector.
inline constexpr double kDegenerateNorm = 1e-12;

enum class NormalizationScope { kPerCluster, kPerDialogue };

// kCosine divides each edge by the endpoint norms (zero vectors get 0). It is
// a variant for experiments; kDot is the reference formulation.
enum class Similarity { kDot, kCosine };

struct CentralityConfig {
  NormalizationScope scope = NormalizationScope::kPerCluster;
  Similarity similarity = Similarity::kDot;
  bool clamp_nonnegative = false;
};

struct GlobalScores {
  std::vector<double> scores;
  bool fallback = false;
};

struct LocalScores {
  std::vector<double> scores;  // per utterance row
  // Per cluster. Under kPerDialogue every entry carries the single
  // whole-vector flag.
  std::vector<bool> fallback;
};

struct GlcScores {
  std::vector<double> global_scores;
  std::vector<double> local_scores;
  std::vector<double> weights;
  bool global_fallback = false;
  std::vector<bool> local_fallback;
};

// Divides by the L2 norm; falls back to 1/sqrt(n) entries when the norm is
// <= kDegenerateNorm. Returns whether the fallback fired.
bool normalize_or_uniform(std::span<double> values);

GlobalScores global_centrality(const Matrix& centers, Similarity similarity = Similarity::kDot);

LocalScores local_centrality(const UtteranceEmbeddings& utterances, const ClusterModel& model,
                             const CentralityConfig& config = {});
LocalScores local_centrality(const Matrix& utterances, const ClusterModel& model,
                             const CentralityConfig& config = {});

std::vector<double> glc_weights(std::span<const double> global_scores, std::span<const double> local_scores,
                                const ClusterModel& model, bool clamp_nonnegative = false);

// Runs the three steps above.
GlcScores score_utterances(const UtteranceEmbeddings& utterances, const ClusterModel& model,
                           const CentralityConfig& config = {});

}  // namespace glc
