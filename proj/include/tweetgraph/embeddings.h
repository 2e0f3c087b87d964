// Copyright 2026 The tweetgraph Authors.
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

#ifndef TWEETGRAPH_EMBEDDINGS_H_
#define TWEETGRAPH_EMBEDDINGS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetgraph::embeddings {

// Hashed character n-gram vectors. Only buckets that were ever written are
// stored; an absent bucket reads as the zero vector.
struct SubwordTable {
  int min_n = 3;
  int max_n = 6;
  std::uint32_t bucket_count = 2'000'000;
  std::vector<std::uint32_t> buckets;  // stored bucket ids, row order
  std::vector<float> rows;             // buckets.size() * dim
};

// Boundary-padded n-grams ("<word>") counted in code points. Single-char
// grams consisting of a boundary marker are skipped.
std::vector<std::string> char_ngrams(std::string_view word, int min_n,
                                     int max_n);

// FNV-1a of the n-gram bytes modulo `bucket_count`.
std::uint32_t ngram_bucket(std::string_view ngram, std::uint32_t bucket_count);

struct Neighbor {
  std::string word;
  double score;

  bool operator==(const Neighbor&) const = default;
};

// Word vectors plus optional subword composition. Immutable once built;
// concurrent reads are safe.
class EmbeddingTable {
 public:
  // `vectors` is row-major words.size() x dim.
  EmbeddingTable(std::size_t dim, std::vector<std::string> words,
                 std::vector<float> vectors,
                 std::optional<SubwordTable> subwords = std::nullopt);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  bool contains(std::string_view word) const;
  bool has_subwords() const { return subwords_.has_value(); }
  const std::optional<SubwordTable>& subwords() const { return subwords_; }

  // Stored row for an in-vocabulary word (no subword composition).
  std::span<const float> row(std::size_t index) const;

  // In-vocabulary: stored row, averaged with its n-gram rows when a subword
  // table is present. Out-of-vocabulary: average of the n-gram rows.
  // Returns nullopt when the word cannot be resolved or composes to zero.
  std::optional<std::vector<float>> try_word_vector(std::string_view word) const;
  // As above, throwing NotFoundError instead of returning nullopt.
  std::vector<float> word_vector(std::string_view word) const;

  // Exhaustive cosine search over the vocabulary, excluding `word` itself.
  // Sorted by descending score, ties by ascending word.
  std::vector<Neighbor> most_similar(std::string_view word,
                                     std::size_t top_n) const;

 private:
  std::optional<std::vector<float>> compose(std::string_view word,
                                            const float* stored) const;

  std::size_t dim_;
  std::vector<std::string> words_;
  std::vector<float> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<SubwordTable> subwords_;
  std::unordered_map<std::uint32_t, std::size_t> bucket_rows_;
  // Unit-normalized composed vectors for most_similar; zero rows for words
  // whose composition vanishes.
  std::vector<float> unit_;
  std::vector<bool> searchable_;
};

// Throws InvalidArgument on length mismatch or a zero vector.
double cosine(std::span<const float> a, std::span<const float> b);

// word2vec text format: "count dim" header, then "word f1 .. fdim".
EmbeddingTable read_vectors(std::istream& in);
EmbeddingTable load_vectors(const std::string& path);
void write_vectors(const EmbeddingTable& table, std::ostream& out);

// Subword side table: "bucket_count min_n max_n dim rows" header, then
// "bucket f1 .. fdim" per stored bucket.
SubwordTable read_subwords(std::istream& in, std::size_t dim);
void write_subwords(const SubwordTable& subwords, std::size_t dim,
                    std::ostream& out);

// Loads `vec_path` and, when given, attaches the subword table.
EmbeddingTable load_table(const std::string& vec_path,
                          const std::optional<std::string>& subword_path);

}  // namespace tweetgraph::embeddings

#endif  // TWEETGRAPH_EMBEDDINGS_H_
