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

#ifndef TWEETGRAPH_CORPUS_H_
#define TWEETGRAPH_CORPUS_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tweetgraph::corpus {

struct RawTweet {
  std::string id;
  std::string text;
  std::optional<std::string> created_at;
};

struct ProcessedTweet {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const ProcessedTweet&) const = default;
};

// Tokenizer rules. Lemmatization is off unless `lemmas` is non-empty.
struct PreprocessConfig {
  std::unordered_set<std::string> stopwords;
  std::unordered_map<std::string, std::string> lemmas;
  // Drop tweets whose text starts with "RT ".
  bool drop_retweets = false;

  static PreprocessConfig with_default_stopwords();
};

// The shipped English stopword list (the NLTK list).
const std::vector<std::string>& default_stopwords();

// A processed, immutable tweet collection. Token lists are never empty and
// ids are unique; the constructor enforces both.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<ProcessedTweet> tweets,
                  std::size_t dropped_tweets = 0);

  const std::vector<ProcessedTweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }

  // token -> number of tweets containing it
  const std::map<std::string, std::size_t>& vocabulary() const {
    return vocabulary_;
  }

  // Tweets dropped during preprocessing (empty token lists or retweets).
  std::size_t dropped_tweets() const { return dropped_tweets_; }

  bool operator==(const Corpus& other) const {
    return tweets_ == other.tweets_;
  }

 private:
  std::vector<ProcessedTweet> tweets_;
  std::map<std::string, std::size_t> vocabulary_;
  std::size_t dropped_tweets_ = 0;
};

struct Stats {
  std::size_t tweet_count = 0;
  std::size_t unique_tokens = 0;
  double mean_tokens = 0.0;
  double std_tokens = 0.0;  // population
};

// JSONL with `id` and `text` keys. Duplicate ids and malformed lines throw
// ParseError carrying the line number.
std::vector<RawTweet> read_raw_tweets(std::istream& in);
std::vector<RawTweet> load_corpus(const std::string& path);
void write_raw_tweets(const std::vector<RawTweet>& tweets, std::ostream& out);

std::vector<std::string> preprocess_tweet(std::string_view text,
                                          const PreprocessConfig& rules);

Corpus preprocess_corpus(const std::vector<RawTweet>& raw,
                         const PreprocessConfig& rules);

Stats corpus_stats(const Corpus& corpus);

// Processed corpus as JSONL: {"id": ..., "tokens": [...]}.
void write_processed(const Corpus& corpus, std::ostream& out);
Corpus read_processed(std::istream& in);

// One token per line; blank lines ignored.
std::unordered_set<std::string> load_stopwords(const std::string& path);
// TSV surface<TAB>lemma; both sides lowercased.
std::unordered_map<std::string, std::string> load_lemmas(
    const std::string& path);

}  // namespace tweetgraph::corpus

#endif  // TWEETGRAPH_CORPUS_H_
