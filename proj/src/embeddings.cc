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

#include "tweetgraph/embeddings.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tweetgraph/error.h"
#include "tweetgraph/text.h"
#include "tweetgraph/util.h"

namespace tweetgraph::embeddings {
namespace {

double dot(const float* a, const float* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += static_cast<double>(a[i]) * b[i];
  return sum;
}

bool all_zero(const std::vector<float>& v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(std::move(field));
  return fields;
}

float parse_float(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  const float value = std::strtof(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw ParseError("invalid number '" + field + "'", line_no);
  }
  return value;
}

std::size_t parse_count(const std::string& field, std::size_t line_no) {
  char* end = nullptr;
  const unsigned long long value = std::strtoull(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0' || field[0] == '-') {
    throw ParseError("invalid count '" + field + "'", line_no);
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

std::vector<std::string> char_ngrams(std::string_view word, int min_n,
                                     int max_n) {
  std::u32string padded = U"<";
  padded += text::decode_utf8(word);
  padded += U">";
  std::vector<std::string> grams;
  const auto len = static_cast<int>(padded.size());
  for (int i = 0; i < len; ++i) {
    for (int n = min_n; n <= max_n && i + n <= len; ++n) {
      if (n == 1 && (i == 0 || i == len - 1)) continue;
      grams.push_back(text::encode_utf8(
          std::u32string_view(padded).substr(static_cast<std::size_t>(i),
                                             static_cast<std::size_t>(n))));
    }
  }
  return grams;
}

std::uint32_t ngram_bucket(std::string_view ngram, std::uint32_t bucket_count) {
  return text::fnv1a32(ngram) % bucket_count;
}

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> words,
                               std::vector<float> vectors,
                               std::optional<SubwordTable> subwords)
    : dim_(dim),
      words_(std::move(words)),
      vectors_(std::move(vectors)),
      subwords_(std::move(subwords)) {
  if (dim_ == 0) throw InvalidArgument("embedding dimension must be positive");
  if (vectors_.size() != words_.size() * dim_) {
    throw InvalidArgument("vector storage does not match words x dim");
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw InvalidArgument("duplicate embedding word: " + words_[i]);
    }
  }
  if (subwords_) {
    if (subwords_->min_n < 1 || subwords_->min_n > subwords_->max_n) {
      throw InvalidArgument("subword n-gram range must satisfy 1 <= min <= max");
    }
    if (subwords_->bucket_count == 0) {
      throw InvalidArgument("subword bucket count must be positive");
    }
    if (subwords_->rows.size() != subwords_->buckets.size() * dim_) {
      throw InvalidArgument("subword storage does not match buckets x dim");
    }
    for (std::size_t r = 0; r < subwords_->buckets.size(); ++r) {
      if (subwords_->buckets[r] >= subwords_->bucket_count) {
        throw InvalidArgument("subword bucket id out of range");
      }
      bucket_rows_.emplace(subwords_->buckets[r], r);
    }
  }

  unit_.assign(words_.size() * dim_, 0.0f);
  searchable_.assign(words_.size(), false);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto composed = compose(words_[i], vectors_.data() + i * dim_);
    if (!composed) continue;
    const double norm = std::sqrt(dot(composed->data(), composed->data(), dim_));
    for (std::size_t d = 0; d < dim_; ++d) {
      unit_[i * dim_ + d] = static_cast<float>((*composed)[d] / norm);
    }
    searchable_[i] = true;
  }
}

bool EmbeddingTable::contains(std::string_view word) const {
  return index_.contains(std::string(word));
}

std::span<const float> EmbeddingTable::row(std::size_t index) const {
  if (index >= words_.size()) throw NotFoundError("embedding row out of range");
  return {vectors_.data() + index * dim_, dim_};
}

std::optional<std::vector<float>> EmbeddingTable::compose(
    std::string_view word, const float* stored) const {
  std::vector<float> out(dim_, 0.0f);
  if (!subwords_) {
    if (stored == nullptr) return std::nullopt;
    std::copy(stored, stored + dim_, out.begin());
    if (all_zero(out)) return std::nullopt;
    return out;
  }
  std::vector<double> sum(dim_, 0.0);
  std::size_t count = 0;
  if (stored != nullptr) {
    for (std::size_t d = 0; d < dim_; ++d) sum[d] += stored[d];
    ++count;
  }
  for (const std::string& gram :
       char_ngrams(word, subwords_->min_n, subwords_->max_n)) {
    ++count;
    auto it = bucket_rows_.find(ngram_bucket(gram, subwords_->bucket_count));
    if (it == bucket_rows_.end()) continue;
    const float* r = subwords_->rows.data() + it->second * dim_;
    for (std::size_t d = 0; d < dim_; ++d) sum[d] += r[d];
  }
  if (count == 0) return std::nullopt;
  for (std::size_t d = 0; d < dim_; ++d) {
    out[d] = static_cast<float>(sum[d] / static_cast<double>(count));
  }
  if (all_zero(out)) return std::nullopt;
  return out;
}

std::optional<std::vector<float>> EmbeddingTable::try_word_vector(
    std::string_view word) const {
  auto it = index_.find(std::string(word));
  const float* stored =
      it == index_.end() ? nullptr : vectors_.data() + it->second * dim_;
  return compose(word, stored);
}

std::vector<float> EmbeddingTable::word_vector(std::string_view word) const {
  auto v = try_word_vector(word);
  if (!v) throw NotFoundError("no vector for word '" + std::string(word) + "'");
  return std::move(*v);
}

std::vector<Neighbor> EmbeddingTable::most_similar(std::string_view word,
                                                   std::size_t top_n) const {
  std::vector<float> query = word_vector(word);
  const double norm = std::sqrt(dot(query.data(), query.data(), dim_));
  for (float& x : query) x = static_cast<float>(x / norm);

  std::vector<Neighbor> scored;
  scored.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!searchable_[i] || words_[i] == word) continue;
    scored.push_back({words_[i], dot(unit_.data() + i * dim_, query.data(), dim_)});
  }
  auto before = [](const Neighbor& a, const Neighbor& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  };
  const std::size_t keep = std::min(top_n, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), before);
  scored.resize(keep);
  return scored;
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw InvalidArgument("cosine of unequal-length vectors");
  const double ab = dot(a.data(), b.data(), a.size());
  const double aa = dot(a.data(), a.data(), a.size());
  const double bb = dot(b.data(), b.data(), b.size());
  if (aa == 0.0 || bb == 0.0) {
    throw InvalidArgument("cosine similarity is undefined for a zero vector");
  }
  return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
}

EmbeddingTable read_vectors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  const std::vector<std::string> header = split_fields(line);
  if (header.size() != 2) throw ParseError("header must be 'count dim'", 1);
  const std::size_t count = parse_count(header[0], 1);
  const std::size_t dim = parse_count(header[1], 1);
  if (dim == 0) throw ParseError("dimension must be positive", 1);

  std::vector<std::string> words;
  std::vector<float> vectors;
  words.reserve(count);
  vectors.reserve(count * dim);
  std::size_t line_no = 1;
  while (words.size() < count && std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError("expected " + std::to_string(dim) + " values, got " +
                           std::to_string(fields.size() - 1),
                       line_no);
    }
    words.push_back(fields[0]);
    for (std::size_t d = 1; d <= dim; ++d) {
      vectors.push_back(parse_float(fields[d], line_no));
    }
  }
  if (words.size() != count) {
    throw ParseError("header announces " + std::to_string(count) +
                     " vectors, found " + std::to_string(words.size()));
  }
  try {
    return EmbeddingTable(dim, std::move(words), std::move(vectors));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

EmbeddingTable load_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embeddings file " + path);
  return read_vectors(in);
}

void write_vectors(const EmbeddingTable& table, std::ostream& out) {
  out << table.size() << ' ' << table.dim() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.words()[i];
    for (float x : table.row(i)) out << ' ' << format_sig9(x);
    out << '\n';
  }
}

SubwordTable read_subwords(std::istream& in, std::size_t dim) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing subword header", 1);
  const std::vector<std::string> header = split_fields(line);
  if (header.size() != 5) {
    throw ParseError("subword header must be 'buckets min_n max_n dim rows'", 1);
  }
  SubwordTable table;
  table.bucket_count = static_cast<std::uint32_t>(parse_count(header[0], 1));
  table.min_n = static_cast<int>(parse_count(header[1], 1));
  table.max_n = static_cast<int>(parse_count(header[2], 1));
  if (parse_count(header[3], 1) != dim) {
    throw ParseError("subword dimension does not match the word vectors", 1);
  }
  const std::size_t rows = parse_count(header[4], 1);
  std::size_t line_no = 1;
  while (table.buckets.size() < rows && std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw ParseError("expected " + std::to_string(dim) + " values", line_no);
    }
    table.buckets.push_back(static_cast<std::uint32_t>(parse_count(fields[0], line_no)));
    for (std::size_t d = 1; d <= dim; ++d) {
      table.rows.push_back(parse_float(fields[d], line_no));
    }
  }
  if (table.buckets.size() != rows) throw ParseError("truncated subword table");
  return table;
}

void write_subwords(const SubwordTable& subwords, std::size_t dim,
                    std::ostream& out) {
  out << subwords.bucket_count << ' ' << subwords.min_n << ' ' << subwords.max_n
      << ' ' << dim << ' ' << subwords.buckets.size() << '\n';
  for (std::size_t r = 0; r < subwords.buckets.size(); ++r) {
    out << subwords.buckets[r];
    for (std::size_t d = 0; d < dim; ++d) {
      out << ' ' << format_sig9(subwords.rows[r * dim + d]);
    }
    out << '\n';
  }
}

EmbeddingTable load_table(const std::string& vec_path,
                          const std::optional<std::string>& subword_path) {
  EmbeddingTable words = load_vectors(vec_path);
  if (!subword_path) return words;
  std::ifstream in(*subword_path);
  if (!in) throw Error("cannot open subword table " + *subword_path);
  SubwordTable subwords = read_subwords(in, words.dim());
  std::vector<float> vectors;
  vectors.reserve(words.size() * words.dim());
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto r = words.row(i);
    vectors.insert(vectors.end(), r.begin(), r.end());
  }
  try {
    return EmbeddingTable(words.dim(), words.words(), std::move(vectors),
                          std::move(subwords));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace tweetgraph::embeddings
