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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "glc/embedding.hpp"
#include "glc/error.hpp"

namespace glc {
namespace {

TokenizedDialogue make_tokenized(std::vector<std::vector<std::string>> utterances) {
  TokenizedDialogue t;
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    const std::size_t begin = t.tokens.size();
    for (auto& tok : utterances[u]) t.tokens.push_back(tok);
    t.spans.push_back(UtteranceSpan{u + 1, begin, t.tokens.size()});
  }
  return t;
}

TEST(HashedEmbedderTest, DeterministicForSameInputs) {
  std::vector<TokenizedDialogue> corpus{make_tokenized({{"a", "b"}}), make_tokenized({{"b", "c"}})};
  auto p1 = build_hashed_embedder(corpus, 16, 42);
  auto p2 = build_hashed_embedder(corpus, 16, 42);
  EXPECT_EQ(p1, p2);
  for (const char* tok : {"a", "b", "c", "unseen"}) EXPECT_EQ(p1.embed(tok), p2.embed(tok));
}

TEST(HashedEmbedderTest, SeedChangesHashing) {
  std::vector<TokenizedDialogue> corpus{make_tokenized({{"a"}})};
  auto p1 = build_hashed_embedder(corpus, 1024, 1);
  auto p2 = build_hashed_embedder(corpus, 1024, 2);
  int differing = 0;
  for (int i = 0; i < 32; ++i) {
    const std::string tok = "tok" + std::to_string(i);
    differing += p1.bucket(tok) != p2.bucket(tok);
  }
  EXPECT_GT(differing, 16);
}

TEST(HashedEmbedderTest, IdfOfUbiquitousTokenIsOne) {
  // ln((1 + 3) / (1 + 3)) + 1
  std::vector<TokenizedDialogue> corpus{make_tokenized({{"the", "x"}}), make_tokenized({{"the"}}),
                                        make_tokenized({{"y", "the"}})};
  auto p = build_hashed_embedder(corpus, 8, 0);
  EXPECT_DOUBLE_EQ(p.idf("the"), 1.0);
  EXPECT_DOUBLE_EQ(p.idf("x"), std::log(4.0 / 2.0) + 1.0);
  EXPECT_DOUBLE_EQ(p.idf("never-seen"), std::log(4.0) + 1.0);
}

TEST(HashedEmbedderTest, VectorIsSignedOneHotScaledByIdf) {
  std::vector<TokenizedDialogue> corpus{make_tokenized({{"alpha", "beta"}}), make_tokenized({{"alpha"}})};
  auto p = build_hashed_embedder(corpus, 32, 5);
  // Find two tokens in different buckets; their vectors must be orthogonal.
  std::string a = "alpha", b;
  for (int i = 0; i < 100 && b.empty(); ++i) {
    const std::string cand = "w" + std::to_string(i);
    if (p.bucket(cand) != p.bucket(a)) b = cand;
  }
  ASSERT_FALSE(b.empty());
  const auto va = p.embed(a);
  const auto vb = p.embed(b);
  EXPECT_EQ(dot(va, vb), 0.0);
  int nonzero = 0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (va[i] != 0.0) {
      ++nonzero;
      EXPECT_EQ(i, p.bucket(a));
      EXPECT_EQ(va[i], p.sign(a) * p.idf(a));
    }
  }
  EXPECT_EQ(nonzero, 1);
}

TEST(HashedEmbedderTest, DimensionBelowTwoRejected) {
  std::vector<TokenizedDialogue> corpus{make_tokenized({{"a"}})};
  EXPECT_THROW(build_hashed_embedder(corpus, 1, 0), ConfigError);
  EXPECT_THROW(build_hashed_embedder({}, 4, 0), PreconditionError);
}

TEST(HashTokenTest, StableKnownValues) {
  // Pinned so that a change to the hash shows up as a test failure.
  EXPECT_EQ(hash_token("", 0), 0x5b21f68ffa77f14cULL);
  EXPECT_EQ(hash_token("a", 0), 0x2a5a3f02a61014a9ULL);
  EXPECT_EQ(hash_token("refund", 7), 0x519fd3db87ebce76ULL);
  EXPECT_EQ(hash_token("hello", 42), 0x1c210799ab6b6ad3ULL);
  EXPECT_NE(hash_token("a", 0), hash_token("b", 0));
  EXPECT_NE(hash_token("a", 0), hash_token("a", 1));
}

TEST(ExternalTableTest, LoadsVectors) {
  std::istringstream in("# comment\nhi 1.0 0.0\nyo 0.0 1.0\n");
  auto p = parse_external_vectors(in);
  EXPECT_EQ(p.kind(), ProviderKind::kExternalTable);
  EXPECT_EQ(p.dimension(), 2u);
  EXPECT_EQ(p.embed("hi"), (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(p.embed("yo"), (std::vector<double>{0.0, 1.0}));
}

TEST(ExternalTableTest, MixedDimensionsIsFormatError) {
  std::istringstream in("a 1 2\nb 1 2 3\n");
  EXPECT_THROW(parse_external_vectors(in), FormatError);
}

TEST(ExternalTableTest, BadNumberIsFormatError) {
  std::istringstream in("a 1 x\n");
  EXPECT_THROW(parse_external_vectors(in), FormatError);
  std::istringstream dup("a 1\na 2\n");
  EXPECT_THROW(parse_external_vectors(dup), FormatError);
}

TEST(ExternalTableTest, MissingTokenPolicy) {
  std::istringstream in("hi 1 0\n");
  auto p = parse_external_vectors(in);
  try {
    p.embed("bye");
    FAIL() << "expected MissingTokenError";
  } catch (const MissingTokenError& e) {
    EXPECT_EQ(e.token(), "bye");
    EXPECT_NE(std::string(e.what()).find("bye"), std::string::npos);
  }
  p.set_missing_policy(MissingTokenPolicy::kZero);
  EXPECT_EQ(p.embed("bye"), (std::vector<double>{0.0, 0.0}));
}

TEST(ExternalTableTest, LoadFromFixtureFile) {
  auto p = load_external_vectors(std::string(GLC_FIXTURE_DIR) + "/subtopics.vec");
  EXPECT_EQ(p.dimension(), 3u);
  EXPECT_EQ(p.embed("refund"), (std::vector<double>{0, 2, 2}));
  EXPECT_THROW(load_external_vectors("/nonexistent/file.vec"), FormatError);
}

class EmbedTokensTest : public ::testing::Test {
 protected:
  EmbeddingProvider table() {
    std::istringstream in("a 1 0\nb 0 1\nc 2 4\n");
    return parse_external_vectors(in);
  }
};

TEST_F(EmbedTokensTest, ShapeAndContextFreeRows) {
  auto t = make_tokenized({{"a", "b", "c"}, {"b", "c", "a"}});
  auto e = embed_tokens(t, table());
  ASSERT_EQ(e.vectors.rows(), 6u);
  ASSERT_EQ(e.vectors.cols(), 2u);
  // Token "c" at positions 2 and 4.
  EXPECT_TRUE(std::equal(e.vectors.row(2).begin(), e.vectors.row(2).end(), e.vectors.row(4).begin()));
}

TEST_F(EmbedTokensTest, EmptyTokenListGivesZeroRows) {
  TokenizedDialogue empty;
  auto e = embed_tokens(empty, table());
  EXPECT_EQ(e.vectors.rows(), 0u);
  EXPECT_EQ(e.vectors.cols(), 2u);
}

TEST_F(EmbedTokensTest, MissingTokenPropagates) {
  auto t = make_tokenized({{"a", "zzz"}});
  EXPECT_THROW(embed_tokens(t, table()), MissingTokenError);
}

TEST(AverageUtterancesTest, SingletonAndPairMeans) {
  auto t = make_tokenized({{"a"}, {"a", "b"}});
  TokenEmbeddings e{Matrix::from_rows({{3, 5}, {1, 0}, {0, 1}})};
  auto u = average_utterances(e, t);
  ASSERT_EQ(u.size(), 2u);
  EXPECT_EQ(u.vectors(0, 0), 3.0);
  EXPECT_EQ(u.vectors(0, 1), 5.0);
  EXPECT_EQ(u.vectors(1, 0), 0.5);
  EXPECT_EQ(u.vectors(1, 1), 0.5);
  EXPECT_EQ(u.units, (std::vector<std::size_t>{1, 2}));
}

TEST(AverageUtterancesTest, ZeroVectorsStayZero) {
  auto t = make_tokenized({{"a", "b"}, {"c"}});
  TokenEmbeddings e{Matrix(3, 4)};
  auto u = average_utterances(e, t);
  for (double v : u.vectors.data()) EXPECT_EQ(v, 0.0);
}

TEST(AverageUtterancesTest, EmptySpanIsPreconditionError) {
  TokenizedDialogue t;
  t.tokens = {"a"};
  t.spans = {UtteranceSpan{1, 0, 1}, UtteranceSpan{2, 1, 1}};
  TokenEmbeddings e{Matrix(1, 2)};
  EXPECT_THROW(average_utterances(e, t), PreconditionError);
  TokenEmbeddings wrong{Matrix(2, 2)};
  EXPECT_THROW(average_utterances(wrong, make_tokenized({{"a"}})), PreconditionError);
}

// Scaling every token vector scales every utterance mean; exact for powers of
// two, within rounding otherwise.
TEST(AverageUtterancesTest, LinearityProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<std::string>> utts(1 + rng() % 5);
    std::size_t total = 0;
    for (auto& u : utts) {
      u.assign(1 + rng() % 4, "t");
      total += u.size();
    }
    auto t = make_tokenized(utts);
    Matrix m(total, 3);
    for (std::size_t r = 0; r < total; ++r) {
      for (double& v : m.row(r)) v = val(rng);
    }
    for (double s : {0.25, 4.0, 3.7}) {
      Matrix scaled = m;
      for (std::size_t r = 0; r < total; ++r) {
        for (double& v : scaled.row(r)) v *= s;
      }
      auto base = average_utterances(TokenEmbeddings{m}, t);
      auto got = average_utterances(TokenEmbeddings{scaled}, t);
      const bool pow2 = s == 0.25 || s == 4.0;
      for (std::size_t i = 0; i < base.vectors.data().size(); ++i) {
        if (pow2) {
          ASSERT_EQ(got.vectors.data()[i], s * base.vectors.data()[i]);
        } else {
          ASSERT_NEAR(got.vectors.data()[i], s * base.vectors.data()[i], 1e-12);
        }
      }
    }
  }
}

}  // namespace
}  // namespace glc
