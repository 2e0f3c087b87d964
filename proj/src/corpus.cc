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

#include "tweetgraph/corpus.h"

#include <cmath>
#include <fstream>
#include <set>

#include "json.hpp"
#include "tweetgraph/error.h"
#include "tweetgraph/text.h"

namespace tweetgraph::corpus {
namespace {

using nlohmann::json;

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') return false;
  }
  return true;
}

bool starts_with_url(std::string_view lowered) {
  return lowered.starts_with("http://") || lowered.starts_with("https://") ||
         lowered.starts_with("www.");
}

// '#' and '@' stay attached to words; apostrophes are handled per fragment.
bool is_separator(char32_t cp) {
  return text::is_punctuation(cp) && cp != U'#' && cp != U'@' &&
         !text::is_apostrophe(cp);
}

bool is_markup_only(std::u32string_view fragment) {
  for (char32_t cp : fragment) {
    if (cp != U'#' && cp != U'@' && !text::is_apostrophe(cp)) return false;
  }
  return true;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

const std::vector<std::string>& default_stopwords() {
  static const std::vector<std::string> kWords = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
      "you're", "you've", "you'll", "you'd", "your", "yours", "yourself",
      "yourselves", "he", "him", "his", "himself", "she", "she's", "her",
      "hers", "herself", "it", "it's", "its", "itself", "they", "them",
      "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
      "that", "that'll", "these", "those", "am", "is", "are", "was", "were",
      "be", "been", "being", "have", "has", "had", "having", "do", "does",
      "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because",
      "as", "until", "while", "of", "at", "by", "for", "with", "about",
      "against", "between", "into", "through", "during", "before", "after",
      "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
      "over", "under", "again", "further", "then", "once", "here", "there",
      "when", "where", "why", "how", "all", "any", "both", "each", "few",
      "more", "most", "other", "some", "such", "no", "nor", "not", "only",
      "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
      "just", "don", "don't", "should", "should've", "now", "d", "ll", "m",
      "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
      "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn",
      "hasn't", "haven", "haven't", "isn", "isn't", "ma", "mightn",
      "mightn't", "mustn", "mustn't", "needn", "needn't", "shan", "shan't",
      "shouldn", "shouldn't", "wasn", "wasn't", "weren", "weren't", "won",
      "won't", "wouldn", "wouldn't"};
  return kWords;
}

PreprocessConfig PreprocessConfig::with_default_stopwords() {
  PreprocessConfig config;
  config.stopwords.insert(default_stopwords().begin(),
                          default_stopwords().end());
  return config;
}

Corpus::Corpus(std::vector<ProcessedTweet> tweets, std::size_t dropped_tweets)
    : tweets_(std::move(tweets)), dropped_tweets_(dropped_tweets) {
  std::set<std::string_view> ids;
  for (const ProcessedTweet& tweet : tweets_) {
    if (tweet.id.empty()) throw InvalidArgument("tweet with empty id");
    if (!ids.insert(tweet.id).second) {
      throw InvalidArgument("duplicate tweet id: " + tweet.id);
    }
    if (tweet.tokens.empty()) {
      throw InvalidArgument("tweet " + tweet.id + " has no tokens");
    }
    std::set<std::string_view> unique(tweet.tokens.begin(),
                                      tweet.tokens.end());
    for (std::string_view token : unique) ++vocabulary_[std::string(token)];
  }
}

std::vector<RawTweet> read_raw_tweets(std::istream& in) {
  std::vector<RawTweet> tweets;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("expected an object", line_no);
    auto id = record.find("id");
    auto body = record.find("text");
    if (id == record.end() || !id->is_string()) {
      throw ParseError("missing string field 'id'", line_no);
    }
    if (body == record.end() || !body->is_string()) {
      throw ParseError("missing string field 'text'", line_no);
    }
    RawTweet tweet{id->get<std::string>(), body->get<std::string>(), {}};
    if (tweet.id.empty()) throw ParseError("empty id", line_no);
    if (tweet.text.empty()) throw ParseError("empty text", line_no);
    if (auto ts = record.find("created_at");
        ts != record.end() && ts->is_string()) {
      tweet.created_at = ts->get<std::string>();
    }
    if (!ids.insert(tweet.id).second) {
      throw ParseError("duplicate id '" + tweet.id + "'", line_no);
    }
    tweets.push_back(std::move(tweet));
  }
  return tweets;
}

std::vector<RawTweet> load_corpus(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  return read_raw_tweets(in);
}

void write_raw_tweets(const std::vector<RawTweet>& tweets, std::ostream& out) {
  for (const RawTweet& tweet : tweets) {
    json record = {{"id", tweet.id}, {"text", tweet.text}};
    if (tweet.created_at) record["created_at"] = *tweet.created_at;
    out << record.dump() << '\n';
  }
}

std::vector<std::string> preprocess_tweet(std::string_view body,
                                          const PreprocessConfig& rules) {
  std::vector<std::string> tokens;
  auto emit = [&](std::u32string_view fragment) {
    while (!fragment.empty() && text::is_apostrophe(fragment.front())) {
      fragment.remove_prefix(1);
    }
    while (!fragment.empty() && text::is_apostrophe(fragment.back())) {
      fragment.remove_suffix(1);
    }
    if (fragment.empty() || fragment.front() == U'@') return;
    if (is_markup_only(fragment)) return;
    std::string token;
    for (char32_t cp : fragment) {
      text::append_utf8(text::is_apostrophe(cp) ? U'\'' : text::to_lower(cp),
                        token);
    }
    if (auto lemma = rules.lemmas.find(token); lemma != rules.lemmas.end()) {
      token = lemma->second;
    }
    if (token.empty() || rules.stopwords.contains(token)) return;
    tokens.push_back(std::move(token));
  };

  for (const std::string& chunk : text::split_whitespace(body)) {
    std::u32string cps = text::decode_utf8(chunk);
    std::size_t start = 0;
    while (start < cps.size() && is_separator(cps[start])) ++start;
    std::u32string_view view(cps);
    view.remove_prefix(start);
    if (starts_with_url(text::to_lower(text::encode_utf8(view.substr(
            0, std::min<std::size_t>(view.size(), 8)))))) {
      continue;
    }
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= view.size(); ++i) {
      if (i == view.size() || is_separator(view[i])) {
        if (i > begin) emit(view.substr(begin, i - begin));
        begin = i + 1;
      }
    }
  }
  return tokens;
}

Corpus preprocess_corpus(const std::vector<RawTweet>& raw,
                         const PreprocessConfig& rules) {
  std::vector<ProcessedTweet> tweets;
  tweets.reserve(raw.size());
  std::size_t dropped = 0;
  for (const RawTweet& tweet : raw) {
    if (rules.drop_retweets && tweet.text.starts_with("RT ")) {
      ++dropped;
      continue;
    }
    std::vector<std::string> tokens = preprocess_tweet(tweet.text, rules);
    if (tokens.empty()) {
      ++dropped;
      continue;
    }
    tweets.push_back({tweet.id, std::move(tokens)});
  }
  return Corpus(std::move(tweets), dropped);
}

Stats corpus_stats(const Corpus& corpus) {
  Stats stats;
  stats.tweet_count = corpus.size();
  stats.unique_tokens = corpus.vocabulary().size();
  if (corpus.empty()) return stats;
  double sum = 0.0;
  for (const ProcessedTweet& tweet : corpus.tweets()) {
    sum += static_cast<double>(tweet.tokens.size());
  }
  stats.mean_tokens = sum / static_cast<double>(corpus.size());
  double squares = 0.0;
  for (const ProcessedTweet& tweet : corpus.tweets()) {
    const double d = static_cast<double>(tweet.tokens.size()) - stats.mean_tokens;
    squares += d * d;
  }
  stats.std_tokens = std::sqrt(squares / static_cast<double>(corpus.size()));
  return stats;
}

void write_processed(const Corpus& corpus, std::ostream& out) {
  for (const ProcessedTweet& tweet : corpus.tweets()) {
    out << json{{"id", tweet.id}, {"tokens", tweet.tokens}}.dump() << '\n';
  }
}

Corpus read_processed(std::istream& in) {
  std::vector<ProcessedTweet> tweets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    try {
      json record = json::parse(line);
      tweets.push_back({record.at("id").get<std::string>(),
                        record.at("tokens").get<std::vector<std::string>>()});
    } catch (const json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  try {
    return Corpus(std::move(tweets));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    words.insert(text::to_lower(line));
  }
  return words;
}

std::unordered_map<std::string, std::string> load_lemmas(
    const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::unordered_map<std::string, std::string> lemmas;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError("expected surface<TAB>lemma", line_no);
    }
    lemmas[text::to_lower(line.substr(0, tab))] =
        text::to_lower(line.substr(tab + 1));
  }
  return lemmas;
}

}  // namespace tweetgraph::corpus
