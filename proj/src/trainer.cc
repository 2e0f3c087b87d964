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

#include "tweetgraph/trainer.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "tweetgraph/error.h"
#include "tweetgraph/sgns.h"
#include "tweetgraph/util.h"

namespace tweetgraph::embeddings {
namespace {

struct Vocabulary {
  std::vector<std::string> words;
  std::vector<std::size_t> counts;
  std::unordered_map<std::string, std::size_t> index;
};

Vocabulary build_vocabulary(const corpus::Corpus& corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  for (const auto& tweet : corpus.tweets()) {
    for (const std::string& token : tweet.tokens) ++counts[token];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [word, count] : counts) {
    if (count >= min_count) kept.emplace_back(word, count);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  Vocabulary vocab;
  for (auto& [word, count] : kept) {
    vocab.index.emplace(word, vocab.words.size());
    vocab.words.push_back(word);
    vocab.counts.push_back(count);
  }
  return vocab;
}

// Cumulative unigram^0.75 distribution for negative sampling.
class NegativeSampler {
 public:
  explicit NegativeSampler(const std::vector<std::size_t>& counts) {
    double total = 0.0;
    for (std::size_t c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
  }

  std::size_t sample(Rng& rng) const {
    const double x = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 cumulative_.size() - 1);
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

void TrainerConfig::validate() const {
  if (dim == 0 || window == 0 || epochs == 0 || negative == 0 ||
      min_count == 0 || buckets == 0) {
    throw InvalidArgument("trainer counts must be positive");
  }
  if (!(learning_rate > 0.0) || !(min_learning_rate > 0.0) ||
      learning_rate < min_learning_rate) {
    throw InvalidArgument("learning rates must be positive with initial >= min");
  }
  if (min_n < 1 || min_n > max_n) {
    throw InvalidArgument("n-gram range must satisfy 1 <= min_n <= max_n");
  }
}

TrainingResult train_subword_skipgram(const corpus::Corpus& corpus,
                                      const TrainerConfig& config) {
  config.validate();
  if (corpus.empty()) throw InvalidArgument("cannot train on an empty corpus");
  const Vocabulary vocab = build_vocabulary(corpus, config.min_count);
  if (vocab.words.empty()) {
    throw InvalidArgument("no word reaches min_count " +
                          std::to_string(config.min_count));
  }
  const std::size_t dim = config.dim;
  const std::size_t vocab_size = vocab.words.size();

  // Input rows: one per vocabulary word, then one per touched bucket.
  std::map<std::uint32_t, std::size_t> bucket_slot;
  std::vector<std::vector<std::uint32_t>> word_buckets(vocab_size);
  for (std::size_t w = 0; w < vocab_size; ++w) {
    for (const std::string& gram : char_ngrams(vocab.words[w], config.min_n, config.max_n)) {
      const std::uint32_t bucket = ngram_bucket(gram, config.buckets);
      word_buckets[w].push_back(bucket);
      bucket_slot.emplace(bucket, 0);
    }
  }
  std::size_t next_row = vocab_size;
  for (auto& [bucket, slot] : bucket_slot) slot = next_row++;
  std::vector<std::vector<std::size_t>> input_rows(vocab_size);
  for (std::size_t w = 0; w < vocab_size; ++w) {
    input_rows[w].push_back(w);
    for (std::uint32_t bucket : word_buckets[w]) {
      input_rows[w].push_back(bucket_slot.at(bucket));
    }
  }

  Rng rng(config.seed);
  std::vector<float> input(next_row * dim);
  const double bound = 1.0 / static_cast<double>(dim);
  for (float& x : input) x = static_cast<float>(rng.uniform(-bound, bound));
  std::vector<float> output(vocab_size * dim, 0.0f);

  std::vector<std::vector<std::size_t>> sentences;
  std::size_t total_tokens = 0;
  for (const auto& tweet : corpus.tweets()) {
    std::vector<std::size_t> ids;
    for (const std::string& token : tweet.tokens) {
      if (auto it = vocab.index.find(token); it != vocab.index.end()) {
        ids.push_back(it->second);
      }
    }
    total_tokens += ids.size();
    sentences.push_back(std::move(ids));
  }

  const NegativeSampler sampler(vocab.counts);
  const double planned = static_cast<double>(config.epochs * total_tokens);
  std::size_t processed = 0;
  std::vector<float> hidden(dim);
  std::vector<float> grad_hidden(dim);
  std::vector<float> grad_output(dim);
  std::vector<double> epoch_loss;

  auto update = [&](std::size_t center, std::size_t target, float lr) {
    const auto& rows = input_rows[center];
    const float inv_rows = 1.0f / static_cast<float>(rows.size());
    std::fill(hidden.begin(), hidden.end(), 0.0f);
    for (std::size_t r : rows) {
      const float* src = input.data() + r * dim;
      for (std::size_t d = 0; d < dim; ++d) hidden[d] += src[d];
    }
    for (float& x : hidden) x *= inv_rows;
    std::fill(grad_hidden.begin(), grad_hidden.end(), 0.0f);

    double loss = 0.0;
    auto step = [&](std::size_t word, bool positive) {
      std::span<float> out(output.data() + word * dim, dim);
      loss += logistic_term<float>(hidden, out, positive, grad_hidden, grad_output);
      for (std::size_t d = 0; d < dim; ++d) out[d] -= lr * grad_output[d];
    };
    step(target, true);
    for (std::size_t k = 0; k < config.negative; ++k) {
      std::size_t negative = sampler.sample(rng);
      if (negative == target) continue;
      step(negative, false);
    }
    for (std::size_t r : rows) {
      float* dst = input.data() + r * dim;
      for (std::size_t d = 0; d < dim; ++d) dst[d] -= lr * inv_rows * grad_hidden[d];
    }
    return loss;
  };

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t updates = 0;
    for (const auto& sentence : sentences) {
      for (std::size_t pos = 0; pos < sentence.size(); ++pos, ++processed) {
        const double progress = static_cast<double>(processed) / planned;
        const auto lr = static_cast<float>(
            config.learning_rate -
            (config.learning_rate - config.min_learning_rate) * progress);
        const std::size_t reach = 1 + rng.below(config.window);
        const std::size_t lo = pos >= reach ? pos - reach : 0;
        const std::size_t hi = std::min(sentence.size() - 1, pos + reach);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          loss_sum += update(sentence[pos], sentence[c], lr);
          ++updates;
        }
      }
    }
    epoch_loss.push_back(updates == 0 ? 0.0 : loss_sum / static_cast<double>(updates));
  }

  SubwordTable subwords;
  subwords.min_n = config.min_n;
  subwords.max_n = config.max_n;
  subwords.bucket_count = config.buckets;
  for (const auto& [bucket, slot] : bucket_slot) {
    subwords.buckets.push_back(bucket);
    subwords.rows.insert(subwords.rows.end(), input.begin() + static_cast<std::ptrdiff_t>(slot * dim),
                         input.begin() + static_cast<std::ptrdiff_t>((slot + 1) * dim));
  }
  std::vector<float> word_rows(input.begin(),
                               input.begin() + static_cast<std::ptrdiff_t>(vocab_size * dim));
  return {EmbeddingTable(dim, vocab.words, std::move(word_rows), std::move(subwords)),
          std::move(epoch_loss)};
}

}  // namespace tweetgraph::embeddings
