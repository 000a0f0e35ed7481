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

// Over-provisioned K-Means: start with one center per utterance vector, run
// Lloyd iterations, then drop every center that attracts no utterance. The
// number of surviving sub-topics falls out of the data.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "glc/embedding.hpp"
#include "glc/matrix.hpp"

namespace glc {

enum class ClusterInit {
  kDataPoints,  // centers start at the input vectors, in input order
  kPlusPlus,    // seeded k-means++ sampling (ablation)
};

struct ClusterConfig {
  std::uint64_t seed = 0;
  std::size_t max_iters = 50;
  double tol = 1e-6;  // stop when no center moves this far (Euclidean)
  ClusterInit init = ClusterInit::kDataPoints;
};

struct ClusterModel {
  Matrix centers;                                // K rows
  std::vector<std::size_t> assignments;          // per input row, in 0..K-1
  std::vector<std::vector<std::size_t>> members; // per cluster, ascending rows
  std::uint64_t seed = 0;
  std::size_t iterations_run = 0;
  // Within-cluster sum of squared distances after each assignment step.
  std::vector<double> objective;

  std::size_t k() const noexcept { return centers.rows(); }
};

// Index of the nearest center per query row (squared Euclidean, ties go to
// the lowest center index).
std::vector<std::size_t> assign_nearest(const Matrix& vectors, const Matrix& centers);

ClusterModel fit_subtopics(const UtteranceEmbeddings& utterances, const ClusterConfig& config = {});
ClusterModel fit_subtopics(const Matrix& vectors, const ClusterConfig& config = {});

// Lloyd iterations from explicit starting centers, followed by the
// empty-center drop. fit_subtopics is this with over-provisioned starts.
ClusterModel run_lloyd(const Matrix& points, Matrix initial_centers, const ClusterConfig& config = {});

// Throws ValidationError if members/assignments disagree or a cluster is
// empty.
void validate(const ClusterModel& model, std::size_t n_points);

}  // namespace glc
