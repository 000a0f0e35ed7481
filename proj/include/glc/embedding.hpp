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

// Token vectors and utterance vectors (span means).
//
// Two providers stand in for a contextual encoder:
//  * hashed: signed feature hashing into `dimension` buckets, scaled by a
//    smoothed idf learned from a corpus of tokenized dialogues;
//  * table: vectors read from a text file, e.g. dumped from a real encoder.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "glc/dialogue.hpp"
#include "glc/matrix.hpp"

namespace glc {

// Seeded 64-bit FNV-1a over the bytes of `text`, finished with the
// splitmix64 mixer. Stable across platforms.
std::uint64_t hash_token(std::string_view text, std::uint64_t seed);

enum class ProviderKind { kHashedTfidf, kExternalTable };
enum class MissingTokenPolicy { kError, kZero };

class EmbeddingProvider {
 public:
  static EmbeddingProvider hashed(std::size_t dimension, std::uint64_t seed, std::size_t corpus_size,
                                  std::unordered_map<std::string, double> idf);
  static EmbeddingProvider table(std::unordered_map<std::string, std::vector<double>> vectors,
                                 MissingTokenPolicy policy = MissingTokenPolicy::kError);

  ProviderKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::uint64_t seed() const noexcept { return seed_; }
  MissingTokenPolicy missing_policy() const noexcept { return policy_; }
  void set_missing_policy(MissingTokenPolicy policy) noexcept { policy_ = policy; }

  // Hashed provider only: idf for `token` (unseen tokens get ln(1 + D) + 1).
  double idf(const std::string& token) const;
  // Hashed provider only: bucket and sign assigned to `token`.
  std::size_t bucket(std::string_view token) const;
  double sign(std::string_view token) const;

  // Writes the vector for `token` into `out` (size == dimension()).
  void embed(const std::string& token, std::span<double> out) const;
  std::vector<double> embed(const std::string& token) const;

  friend bool operator==(const EmbeddingProvider&, const EmbeddingProvider&) = default;

 private:
  EmbeddingProvider() = default;

  ProviderKind kind_ = ProviderKind::kHashedTfidf;
  std::size_t dimension_ = 0;
  std::uint64_t seed_ = 0;
  std::size_t corpus_size_ = 0;
  std::unordered_map<std::string, double> idf_;
  std::unordered_map<std::string, std::vector<double>> table_;
  MissingTokenPolicy policy_ = MissingTokenPolicy::kError;
};

// idf = ln((1 + D) / (1 + df)) + 1 over the corpus' dialogues.
EmbeddingProvider build_hashed_embedder(std::span<const TokenizedDialogue> corpus, std::size_t dimension,
                                        std::uint64_t seed);

// External-vector text format: "token v1 v2 ... vd" per line, '#' comments.
EmbeddingProvider load_external_vectors(const std::filesystem::path& path,
                                        MissingTokenPolicy policy = MissingTokenPolicy::kError);
EmbeddingProvider parse_external_vectors(std::istream& in,
                                         MissingTokenPolicy policy = MissingTokenPolicy::kError);

// Row t holds h_t, the vector of token t.
struct TokenEmbeddings {
  Matrix vectors;
};

// Row r holds the mean vector of span r; units[r] is that span's unit index.
struct UtteranceEmbeddings {
  Matrix vectors;
  std::vector<std::size_t> units;

  std::size_t size() const noexcept { return vectors.rows(); }
};

TokenEmbeddings embed_tokens(const TokenizedDialogue& tokenized, const EmbeddingProvider& provider);

UtteranceEmbeddings average_utterances(const TokenEmbeddings& tokens, const TokenizedDialogue& tokenized);

}  // namespace glc
