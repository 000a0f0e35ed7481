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

#include "glc/embedding.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "glc/error.hpp"

namespace glc {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
// Seed perturbation for the sign hash, so bucket and sign are independent.
constexpr std::uint64_t kSignSalt = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t hash_token(std::string_view text, std::uint64_t seed) {
  std::uint64_t h = kFnvOffset ^ splitmix64(seed);
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return splitmix64(h);
}

EmbeddingProvider EmbeddingProvider::hashed(std::size_t dimension, std::uint64_t seed, std::size_t corpus_size,
                                            std::unordered_map<std::string, double> idf) {
  if (dimension < 2) throw ConfigError("hashed embedder dimension must be >= 2");
  EmbeddingProvider p;
  p.kind_ = ProviderKind::kHashedTfidf;
  p.dimension_ = dimension;
  p.seed_ = seed;
  p.corpus_size_ = corpus_size;
  p.idf_ = std::move(idf);
  return p;
}

EmbeddingProvider EmbeddingProvider::table(std::unordered_map<std::string, std::vector<double>> vectors,
                                           MissingTokenPolicy policy) {
  if (vectors.empty()) throw FormatError("embedding table is empty");
  EmbeddingProvider p;
  p.kind_ = ProviderKind::kExternalTable;
  p.dimension_ = vectors.begin()->second.size();
  if (p.dimension_ == 0) throw FormatError("embedding table has zero-dimensional vectors");
  for (const auto& [token, vec] : vectors) {
    if (vec.size() != p.dimension_) throw FormatError("inconsistent dimension for token \"" + token + "\"");
    for (double v : vec) {
      if (!std::isfinite(v)) throw FormatError("non-finite component for token \"" + token + "\"");
    }
  }
  p.table_ = std::move(vectors);
  p.policy_ = policy;
  return p;
}

double EmbeddingProvider::idf(const std::string& token) const {
  if (auto it = idf_.find(token); it != idf_.end()) return it->second;
  return std::log(1.0 + static_cast<double>(corpus_size_)) + 1.0;
}

std::size_t EmbeddingProvider::bucket(std::string_view token) const {
  return static_cast<std::size_t>(hash_token(token, seed_) % dimension_);
}

double EmbeddingProvider::sign(std::string_view token) const {
  return (hash_token(token, seed_ ^ kSignSalt) & 1U) == 0 ? 1.0 : -1.0;
}

void EmbeddingProvider::embed(const std::string& token, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (kind_ == ProviderKind::kHashedTfidf) {
    out[bucket(token)] = sign(token) * idf(token);
    return;
  }
  auto it = table_.find(token);
  if (it == table_.end()) {
    if (policy_ == MissingTokenPolicy::kZero) return;
    throw MissingTokenError(token);
  }
  std::copy(it->second.begin(), it->second.end(), out.begin());
}

std::vector<double> EmbeddingProvider::embed(const std::string& token) const {
  std::vector<double> out(dimension_);
  embed(token, out);
  return out;
}

EmbeddingProvider build_hashed_embedder(std::span<const TokenizedDialogue> corpus, std::size_t dimension,
                                        std::uint64_t seed) {
  if (dimension < 2) throw ConfigError("hashed embedder dimension must be >= 2");
  if (corpus.empty()) throw PreconditionError("hashed embedder needs a non-empty corpus");

  std::unordered_map<std::string, std::size_t> df;
  for (const auto& doc : corpus) {
    std::set<std::string_view> seen(doc.tokens.begin(), doc.tokens.end());
    for (auto tok : seen) ++df[std::string(tok)];
  }

  const double n_docs = static_cast<double>(corpus.size());
  std::unordered_map<std::string, double> idf;
  idf.reserve(df.size());
  for (const auto& [token, count] : df) {
    idf.emplace(token, std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return EmbeddingProvider::hashed(dimension, seed, corpus.size(), std::move(idf));
}

EmbeddingProvider parse_external_vectors(std::istream& in, MissingTokenPolicy policy) {
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t dimension = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    const auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    const auto sep = line.find(' ');
    if (sep == std::string::npos || sep == 0) throw FormatError(where() + "expected a token followed by floats");
    std::string token = line.substr(0, sep);

    std::vector<double> vec;
    const char* p = line.data() + sep;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || (next < end && *next != ' ')) {
        throw FormatError(where() + "bad number for token \"" + token + "\"");
      }
      if (!std::isfinite(v)) throw FormatError(where() + "non-finite number for token \"" + token + "\"");
      vec.push_back(v);
      p = next;
    }

    if (vec.empty()) throw FormatError(where() + "token \"" + token + "\" has no components");
    if (dimension == 0) dimension = vec.size();
    if (vec.size() != dimension) {
      throw FormatError(where() + "expected " + std::to_string(dimension) + " components, got " +
                        std::to_string(vec.size()));
    }
    if (!vectors.emplace(std::move(token), std::move(vec)).second) {
      throw FormatError(where() + "duplicate token");
    }
  }
  return EmbeddingProvider::table(std::move(vectors), policy);
}

EmbeddingProvider load_external_vectors(const std::filesystem::path& path, MissingTokenPolicy policy) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open embedding table " + path.string());
  return parse_external_vectors(in, policy);
}

TokenEmbeddings embed_tokens(const TokenizedDialogue& tokenized, const EmbeddingProvider& provider) {
  TokenEmbeddings out{Matrix(tokenized.size(), provider.dimension())};
  for (std::size_t t = 0; t < tokenized.size(); ++t) {
    provider.embed(tokenized.tokens[t], out.vectors.row(t));
  }
  return out;
}

UtteranceEmbeddings average_utterances(const TokenEmbeddings& tokens, const TokenizedDialogue& tokenized) {
  if (tokens.vectors.rows() != tokenized.size()) {
    throw PreconditionError("token embedding rows do not match token count");
  }
  const std::size_t dim = tokens.vectors.cols();
  UtteranceEmbeddings out{Matrix(tokenized.spans.size(), dim), {}};
  out.units.reserve(tokenized.spans.size());
  for (std::size_t s = 0; s < tokenized.spans.size(); ++s) {
    const auto& span = tokenized.spans[s];
    if (span.size() == 0) throw PreconditionError("empty span for unit " + std::to_string(span.unit));
    if (span.end > tokenized.size()) throw PreconditionError("span exceeds token count");
    auto row = out.vectors.row(s);
    for (std::size_t t = span.begin; t < span.end; ++t) {
      const auto src = tokens.vectors.row(t);
      for (std::size_t c = 0; c < dim; ++c) row[c] += src[c];
    }
    const double n = static_cast<double>(span.size());
    for (double& v : row) v /= n;
    out.units.push_back(span.unit);
  }
  return out;
}

}  // namespace glc
