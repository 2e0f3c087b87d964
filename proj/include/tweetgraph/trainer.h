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

#ifndef TWEETGRAPH_TRAINER_H_
#define TWEETGRAPH_TRAINER_H_

#include <cstdint>
#include <vector>

#include "tweetgraph/corpus.h"
#include "tweetgraph/embeddings.h"

namespace tweetgraph::embeddings {

struct TrainerConfig {
  std::size_t dim = 300;
  std::size_t window = 5;
  std::size_t epochs = 30;
  std::size_t negative = 5;
  double learning_rate = 0.05;
  double min_learning_rate = 0.0005;
  std::size_t min_count = 5;
  int min_n = 3;
  int max_n = 6;
  std::uint32_t buckets = 2'000'000;
  std::uint64_t seed = 1;

  // Throws InvalidArgument when a count is zero or the rates are inverted.
  void validate() const;
};

struct TrainingResult {
  EmbeddingTable table;
  // Mean loss per (center, context) update, one entry per epoch.
  std::vector<double> epoch_loss;
};

// Skip-gram with negative sampling over subword-composed inputs.
// Single-threaded and fully deterministic for a fixed seed. Throws
// InvalidArgument on an empty corpus or when no word reaches min_count.
TrainingResult train_subword_skipgram(const corpus::Corpus& corpus,
                                      const TrainerConfig& config);

}  // namespace tweetgraph::embeddings

#endif  // TWEETGRAPH_TRAINER_H_
