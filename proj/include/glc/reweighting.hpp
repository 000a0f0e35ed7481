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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "glc/dialogue.hpp"
#include "glc/embedding.hpp"
#include "glc/matrix.hpp"

namespace glc {

inline constexpr double kDefaultLambda = 0.5;

struct ReweightedTokens {
  Matrix vectors;
  std::vector<double> token_weights;  // weight inherited from the token's utterance
};

// What a downstream decoder would consume: the original token matrix, the
// GLC-scaled matrix, and their lambda blend.
struct ReweightedRepresentation {
  Matrix original;
  Matrix reweighted;
  Matrix blended;
  double lambda = kDefaultLambda;
  std::vector<double> token_weights;
};

// `weights` has one entry per span of `tokenized`, in span order.
ReweightedTokens reweight_tokens(const TokenEmbeddings& tokens, std::span<const double> weights,
                                 const TokenizedDialogue& tokenized);

// lambda * reweighted + (1 - lambda) * original, row by row. lambda = 0 and
// lambda = 1 return exact copies of the respective input.
Matrix blend(const Matrix& original, const Matrix& reweighted, double lambda);

// lambda * w_t + (1 - lambda): the end-to-end factor applied to token t.
std::vector<double> effective_token_salience(std::span<const double> token_weights, double lambda);

ReweightedRepresentation apply_glc(const TokenEmbeddings& tokens, std::span<const double> weights,
                                   const TokenizedDialogue& tokenized, double lambda = kDefaultLambda);

// Binary layout: uint64 rows, uint64 cols, then rows*cols float64, all
// little-endian, row-major.
void write_matrix_binary(std::ostream& out, const Matrix& m);
void write_matrix_binary(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_binary(std::istream& in);

}  // namespace glc
