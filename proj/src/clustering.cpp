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

#include "glc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "glc/error.hpp"

namespace glc {

namespace {

// Draws straight from the engine output; std distributions are
// implementation-defined and would break cross-platform reproducibility.
std::size_t draw_index(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Matrix init_plus_plus(const Matrix& points, std::uint64_t seed) {
  const std::size_t n = points.rows();
  Matrix centers(n, points.cols());
  std::mt19937_64 rng(seed);

  auto copy_row = [&](std::size_t dst, std::size_t src) {
    auto out = centers.row(dst);
    auto in = points.row(src);
    std::copy(in.begin(), in.end(), out.begin());
  };

  copy_row(0, draw_index(rng, n));
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (std::size_t k = 1; k < n; ++k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points.row(i), centers.row(k - 1)));
      total += nearest[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = draw_unit(rng) * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += nearest[i];
        if (target < acc && nearest[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      // Every point already coincides with a center; the extra center is a
      // duplicate that the final drop removes.
      pick = draw_index(rng, n);
    }
    copy_row(k, pick);
  }
  return centers;
}

double objective_of(const Matrix& points, const Matrix& centers, const std::vector<std::size_t>& assign) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) sum += squared_distance(points.row(i), centers.row(assign[i]));
  return sum;
}

}  // namespace

std::vector<std::size_t> assign_nearest(const Matrix& vectors, const Matrix& centers) {
  if (centers.rows() == 0) throw PreconditionError("assign_nearest needs at least one center");
  if (vectors.rows() > 0 && vectors.cols() != centers.cols()) {
    throw ValidationError("dimension mismatch between queries and centers");
  }
  std::vector<std::size_t> out(vectors.rows(), 0);
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    double best = squared_distance(vectors.row(i), centers.row(0));
    for (std::size_t k = 1; k < centers.rows(); ++k) {
      const double d = squared_distance(vectors.row(i), centers.row(k));
      if (d < best) {
        best = d;
        out[i] = k;
      }
    }
  }
  return out;
}

ClusterModel fit_subtopics(const UtteranceEmbeddings& utterances, const ClusterConfig& config) {
  return fit_subtopics(utterances.vectors, config);
}

ClusterModel fit_subtopics(const Matrix& points, const ClusterConfig& config) {
  if (points.rows() == 0) throw PreconditionError("fit_subtopics needs at least one vector");
  if (config.max_iters == 0) throw ConfigError("max_iters must be >= 1");
  if (!(config.tol >= 0.0)) throw ConfigError("tol must be non-negative");
  if (!points.all_finite()) throw ValidationError("utterance vectors contain non-finite entries");

  Matrix centers = config.init == ClusterInit::kDataPoints ? points : init_plus_plus(points, config.seed);
  return run_lloyd(points, std::move(centers), config);
}

ClusterModel run_lloyd(const Matrix& points, Matrix centers, const ClusterConfig& config) {
  if (points.rows() == 0 || centers.rows() == 0) throw PreconditionError("run_lloyd needs points and centers");
  if (points.cols() != centers.cols()) throw ValidationError("dimension mismatch between points and centers");
  if (config.max_iters == 0) throw ConfigError("max_iters must be >= 1");

  const std::size_t n = points.rows();
  const std::size_t dim = points.cols();

  ClusterModel model;
  model.seed = config.seed;

  std::vector<std::size_t> assign;
  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    assign = assign_nearest(points, centers);
    model.objective.push_back(objective_of(points, centers, assign));

    Matrix sums(centers.rows(), dim);
    std::vector<std::size_t> counts(centers.rows(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto acc = sums.row(assign[i]);
      auto p = points.row(i);
      for (std::size_t c = 0; c < dim; ++c) acc[c] += p[c];
      ++counts[assign[i]];
    }

    double max_move = 0.0;
    for (std::size_t k = 0; k < centers.rows(); ++k) {
      if (counts[k] == 0) continue;  // empty centers stay put until the final drop
      auto next = sums.row(k);
      for (double& v : next) v /= static_cast<double>(counts[k]);
      max_move = std::max(max_move, std::sqrt(squared_distance(next, centers.row(k))));
      std::copy(next.begin(), next.end(), centers.row(k).begin());
    }
    model.iterations_run = iter;
    if (max_move < config.tol) break;
  }

  assign = assign_nearest(points, centers);

  std::vector<std::size_t> counts(centers.rows(), 0);
  for (std::size_t a : assign) ++counts[a];
  std::vector<std::size_t> remap(centers.rows(), 0);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < centers.rows(); ++k) {
    if (counts[k] > 0) remap[k] = kept++;
  }

  model.centers = Matrix(kept, dim);
  for (std::size_t k = 0; k < centers.rows(); ++k) {
    if (counts[k] == 0) continue;
    auto src = centers.row(k);
    std::copy(src.begin(), src.end(), model.centers.row(remap[k]).begin());
  }
  model.assignments.resize(n);
  model.members.assign(kept, {});
  for (std::size_t i = 0; i < n; ++i) {
    model.assignments[i] = remap[assign[i]];
    model.members[model.assignments[i]].push_back(i);
  }
  return model;
}

void validate(const ClusterModel& model, std::size_t n_points) {
  if (model.assignments.size() != n_points) throw ValidationError("assignment count does not match input");
  if (model.members.size() != model.k()) throw ValidationError("member lists do not match center count");
  if (model.k() > n_points) throw ValidationError("more clusters than points");
  std::size_t total = 0;
  for (std::size_t k = 0; k < model.k(); ++k) {
    if (model.members[k].empty()) throw ValidationError("cluster " + std::to_string(k) + " is empty");
    for (std::size_t i : model.members[k]) {
      if (i >= n_points || model.assignments[i] != k) throw ValidationError("members and assignments disagree");
    }
    total += model.members[k].size();
  }
  if (total != n_points) throw ValidationError("members do not cover every point");
}

}  // namespace glc
