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

#include "glc/reweighting.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "glc/error.hpp"

namespace glc {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw FormatError("truncated matrix stream");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

ReweightedTokens reweight_tokens(const TokenEmbeddings& tokens, std::span<const double> weights,
                                 const TokenizedDialogue& tokenized) {
  if (weights.size() != tokenized.spans.size()) throw ValidationError("one weight per utterance span is required");
  if (tokens.vectors.rows() != tokenized.size()) throw ValidationError("token matrix does not match token count");

  ReweightedTokens out{tokens.vectors, std::vector<double>(tokenized.size(), 0.0)};
  std::size_t expected_begin = 0;
  for (std::size_t s = 0; s < tokenized.spans.size(); ++s) {
    const auto& span = tokenized.spans[s];
    if (span.begin != expected_begin || span.end < span.begin || span.end > tokenized.size()) {
      throw ValidationError("spans do not partition the token stream");
    }
    expected_begin = span.end;
    for (std::size_t t = span.begin; t < span.end; ++t) {
      out.token_weights[t] = weights[s];
      for (double& v : out.vectors.row(t)) v *= weights[s];
    }
  }
  if (expected_begin != tokenized.size()) throw ValidationError("spans do not cover the token stream");
  return out;
}

Matrix blend(const Matrix& original, const Matrix& reweighted, double lambda) {
  check_lambda(lambda);
  if (original.rows() != reweighted.rows() || original.cols() != reweighted.cols()) {
    throw ValidationError("blend inputs differ in shape");
  }
  if (lambda == 0.0) return original;
  if (lambda == 1.0) return reweighted;

  Matrix out(original.rows(), original.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      out(r, c) = lambda * reweighted(r, c) + (1.0 - lambda) * original(r, c);
    }
  }
  return out;
}

std::vector<double> effective_token_salience(std::span<const double> token_weights, double lambda) {
  check_lambda(lambda);
  std::vector<double> out(token_weights.size());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = lambda * token_weights[t] + (1.0 - lambda);
  return out;
}

ReweightedRepresentation apply_glc(const TokenEmbeddings& tokens, std::span<const double> weights,
                                   const TokenizedDialogue& tokenized, double lambda) {
  check_lambda(lambda);
  auto scaled = reweight_tokens(tokens, weights, tokenized);
  ReweightedRepresentation out;
  out.original = tokens.vectors;
  out.blended = blend(tokens.vectors, scaled.vectors, lambda);
  out.reweighted = std::move(scaled.vectors);
  out.token_weights = std::move(scaled.token_weights);
  out.lambda = lambda;
  return out;
}

void write_matrix_binary(std::ostream& out, const Matrix& m) {
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (double v : m.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw Error("failed writing matrix stream");
}

void write_matrix_binary(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_matrix_binary(out, m);
}

Matrix read_matrix_binary(std::istream& in) {
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (double& v : m.row(r)) v = std::bit_cast<double>(get_u64(in));
  }
  return m;
}

}  // namespace glc
