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

#ifndef TWEETGRAPH_SYNTHETIC_H_
#define TWEETGRAPH_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "tweetgraph/corpus.h"

// Seeded generator for tweet corpora with planted events. Used as a fixture
// in place of live collection.
namespace tweetgraph::corpus {

struct EventTemplate {
  std::string name;
  std::vector<std::string> keywords;
  // Paraphrase variants per keyword: variants[i] holds alternative surface
  // forms of keywords[i]. May be shorter than keywords.
  std::vector<std::vector<std::string>> variants;
  // Event-specific context words sampled into each tweet.
  std::vector<std::string> context;
  double weight = 1.0;
};

struct SyntheticConfig {
  std::vector<EventTemplate> templates;
  std::size_t tweet_count = 200;
  double noise_rate = 0.2;
  // Probability that a keyword appears in a tweet of its event.
  double keyword_rate = 0.85;
  // Probability that an included keyword is replaced by one of its variants.
  double variant_rate = 0.1;
  std::size_t context_words = 3;
  std::size_t filler_words = 2;
  // Each event tweet also gets 1..rare_words idiosyncratic tokens.
  std::size_t rare_words = 2;
  // Shared background vocabulary for filler and noise tweets.
  std::vector<std::string> filler;
};

inline constexpr const char* kNoiseLabel = "noise";

struct SyntheticTweet {
  RawTweet tweet;
  std::string label;  // template name or kNoiseLabel
};

// Deterministic for a fixed seed. Template counts follow the configured
// weights exactly (largest-remainder allocation), noise count is
// round(noise_rate * tweet_count). Throws InvalidArgument on zero templates.
std::vector<SyntheticTweet> generate_synthetic(const SyntheticConfig& config,
                                               std::uint64_t seed);

// Three planted events over a shared filler vocabulary.
SyntheticConfig default_synthetic_config();

// JSONL with an extra `label` key per line.
void write_synthetic(const std::vector<SyntheticTweet>& tweets,
                     std::ostream& out);

}  // namespace tweetgraph::corpus

#endif  // TWEETGRAPH_SYNTHETIC_H_
