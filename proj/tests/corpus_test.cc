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

#include <map>
#include <set>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "test_util.h"
#include "tweetgraph/corpus.h"
#include "tweetgraph/error.h"
#include "tweetgraph/synthetic.h"

namespace tweetgraph::corpus {
namespace {

using ::testing::ElementsAre;
using Tokens = std::vector<std::string>;

PreprocessConfig no_stopwords() { return PreprocessConfig{}; }

TEST(LoadCorpus, ReadsTwoLines) {
  std::istringstream in(R"({"id":"a","text":"hello"})"
                        "\n"
                        R"({"id":"b","text":"world","created_at":"2020-02-25T10:00:00Z"})"
                        "\n");
  const auto raw = read_raw_tweets(in);
  ASSERT_EQ(raw.size(), 2u);
  EXPECT_EQ(raw[0].id, "a");
  EXPECT_EQ(raw[1].text, "world");
  EXPECT_EQ(raw[1].created_at, "2020-02-25T10:00:00Z");
  EXPECT_FALSE(raw[0].created_at.has_value());
}

TEST(LoadCorpus, DuplicateIdNamesTheId) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n");
  try {
    read_raw_tweets(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, EmptyFileIsValid) {
  std::istringstream in("");
  EXPECT_TRUE(read_raw_tweets(in).empty());
}

TEST(LoadCorpus, MalformedLineReportsLineNumber) {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\"}\n\n{\"id\":\"b\",\"text\"\n");
  try {
    read_raw_tweets(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadCorpus, MissingTextIsAnError) {
  std::istringstream in("{\"id\":\"a\"}\n");
  EXPECT_THROW(read_raw_tweets(in), ParseError);
}

TEST(LoadCorpus, MissingFileThrows) {
  EXPECT_THROW(load_corpus("/nonexistent/tweets.jsonl"), Error);
}

TEST(Preprocess, CdcHeadlineWithLemma) {
  PreprocessConfig rules = PreprocessConfig::with_default_stopwords();
  rules.lemmas = {{"us", "u"}};
  EXPECT_THAT(preprocess_tweet("US CDC warns of disruption to everyday life' with spread of "
                               "coronavirus https://t.co/x",
                               rules),
              ElementsAre("u", "cdc", "warns", "disruption", "everyday", "life", "spread",
                          "coronavirus"));
}

TEST(Preprocess, EmptyText) {
  EXPECT_TRUE(preprocess_tweet("", PreprocessConfig::with_default_stopwords()).empty());
}

TEST(Preprocess, MentionAndPunctuation) {
  EXPECT_THAT(preprocess_tweet("@bob Corona test!!", no_stopwords()),
              ElementsAre("corona", "test"));
}

TEST(Preprocess, KeepsHashtagsApostrophesAndEmoji) {
  EXPECT_THAT(preprocess_tweet("#Covid19 isn’t over ☕ ... www.cdc.gov", no_stopwords()),
              ElementsAre("#covid19", "isn't", "over", "☕"));
}

TEST(Preprocess, NonAsciiLowercase) {
  EXPECT_THAT(preprocess_tweet("ÉCOLE Москва ΑΘΗΝΑ", no_stopwords()),
              ElementsAre("école", "москва", "αθηνα"));
}

TEST(Preprocess, StopwordsAfterLemma) {
  PreprocessConfig rules;
  rules.stopwords = {"the"};
  rules.lemmas = {{"thee", "the"}};
  EXPECT_THAT(preprocess_tweet("Thee THE cat", rules), ElementsAre("cat"));
}

TEST(Preprocess, DefaultStopwordsAreTheShippedList) {
  EXPECT_EQ(default_stopwords().size(), 179u);
  const auto rules = PreprocessConfig::with_default_stopwords();
  EXPECT_TRUE(rules.stopwords.count("the"));
  EXPECT_TRUE(rules.stopwords.count("wouldn't"));
  EXPECT_FALSE(rules.stopwords.count("us"));
}

TEST(Preprocess, IdempotentOnSyntheticTweets) {
  const auto rules = PreprocessConfig::with_default_stopwords();
  for (const auto& t : generate_synthetic(default_synthetic_config(), 3)) {
    const Tokens once = preprocess_tweet(t.tweet.text, rules);
    std::string joined;
    for (const auto& tok : once) joined += (joined.empty() ? "" : " ") + tok;
    EXPECT_EQ(preprocess_tweet(joined, rules), once) << t.tweet.text;
  }
}

TEST(PreprocessCorpus, DropsEmptyAndRetweets) {
  PreprocessConfig rules = PreprocessConfig::with_default_stopwords();
  rules.drop_retweets = true;
  const Corpus c = preprocess_corpus({{"1", "the of and", {}},
                                      {"2", "RT @x cruise ship", {}},
                                      {"3", "cruise ship docked", {}}},
                                     rules);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.tweets()[0].id, "3");
  EXPECT_EQ(c.dropped_tweets(), 2u);
}

TEST(Corpus, VocabularyDocumentFrequencySumCheck) {
  const auto rules = PreprocessConfig::with_default_stopwords();
  std::vector<RawTweet> raw;
  for (const auto& t : generate_synthetic(default_synthetic_config(), 11)) raw.push_back(t.tweet);
  const Corpus c = preprocess_corpus(raw, rules);
  std::size_t df_sum = 0;
  for (const auto& [token, df] : c.vocabulary()) {
    EXPECT_GE(df, 1u);
    df_sum += df;
  }
  std::size_t unique_sum = 0;
  std::set<std::string> all;
  for (const auto& t : c.tweets()) {
    const std::set<std::string> unique(t.tokens.begin(), t.tokens.end());
    unique_sum += unique.size();
    all.insert(unique.begin(), unique.end());
  }
  EXPECT_EQ(df_sum, unique_sum);
  EXPECT_EQ(all.size(), c.vocabulary().size());
}

TEST(Corpus, RejectsDuplicateIdsAndEmptyTokens) {
  EXPECT_THROW(Corpus(std::vector<ProcessedTweet>{{"a", {"x"}}, {"a", {"y"}}}), InvalidArgument);
  EXPECT_THROW(Corpus(std::vector<ProcessedTweet>{{"a", {}}}), InvalidArgument);
}

TEST(Corpus, ProcessedRoundTrip) {
  const Corpus c = testing::make_corpus({{"a", "b"}, {"c"}});
  std::stringstream buffer;
  write_processed(c, buffer);
  EXPECT_EQ(read_processed(buffer), c);
}

TEST(CorpusStats, MeanAndPopulationStd) {
  const Stats s = corpus_stats(testing::make_corpus({{"a", "b"}, {"a", "b", "c", "d"}}));
  EXPECT_EQ(s.tweet_count, 2u);
  EXPECT_EQ(s.unique_tokens, 4u);
  EXPECT_DOUBLE_EQ(s.mean_tokens, 3.0);
  EXPECT_DOUBLE_EQ(s.std_tokens, 1.0);
}

TEST(CorpusStats, SingleTweet) {
  const Stats s = corpus_stats(testing::make_corpus({{"a", "b", "c"}}));
  EXPECT_DOUBLE_EQ(s.mean_tokens, 3.0);
  EXPECT_DOUBLE_EQ(s.std_tokens, 0.0);
}

TEST(CorpusStats, EmptyCorpus) {
  const Stats s = corpus_stats(Corpus{});
  EXPECT_EQ(s.tweet_count, 0u);
  EXPECT_EQ(s.unique_tokens, 0u);
  EXPECT_EQ(s.mean_tokens, 0.0);
}

TEST(ResourceFiles, StopwordsAndLemmas) {
  const auto dir = testing::scratch_dir("resources");
  testing::write_file(dir / "stop.txt", "foo\n\nBar\n");
  testing::write_file(dir / "lemmas.tsv", "Cats\tcat\nus\tu\n");
  testing::write_file(dir / "bad.tsv", "cats cat\n");
  const auto stop = load_stopwords((dir / "stop.txt").string());
  EXPECT_EQ(stop, (std::unordered_set<std::string>{"foo", "bar"}));
  const auto lemmas = load_lemmas((dir / "lemmas.tsv").string());
  EXPECT_EQ(lemmas.at("cats"), "cat");
  EXPECT_THROW(load_lemmas((dir / "bad.tsv").string()), ParseError);
}

SyntheticConfig two_templates() {
  SyntheticConfig config = default_synthetic_config();
  config.templates.resize(2);
  config.tweet_count = 50;
  return config;
}

TEST(Synthetic, DeterministicForSeed) {
  std::ostringstream a, b;
  write_synthetic(generate_synthetic(two_templates(), 7), a);
  write_synthetic(generate_synthetic(two_templates(), 7), b);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_synthetic(generate_synthetic(two_templates(), 8), c);
  EXPECT_NE(a.str(), c.str());
}

TEST(Synthetic, ZeroNoiseTagsEveryTweet) {
  SyntheticConfig config = two_templates();
  config.noise_rate = 0.0;
  for (const auto& t : generate_synthetic(config, 7)) {
    EXPECT_TRUE(t.label == config.templates[0].name || t.label == config.templates[1].name);
  }
}

TEST(Synthetic, TemplateProportions) {
  const SyntheticConfig config = default_synthetic_config();
  std::map<std::string, std::size_t> counts;
  for (const auto& t : generate_synthetic(config, 1)) ++counts[t.label];
  EXPECT_EQ(counts[kNoiseLabel], 40u);
  for (const auto& tmpl : config.templates) {
    EXPECT_GE(counts[tmpl.name], 53u);
    EXPECT_LE(counts[tmpl.name], 54u);
  }
}

TEST(Synthetic, WeightedProportions) {
  SyntheticConfig config = default_synthetic_config();
  config.templates[0].weight = 2.0;
  config.noise_rate = 0.0;
  config.tweet_count = 100;
  std::map<std::string, std::size_t> counts;
  for (const auto& t : generate_synthetic(config, 1)) ++counts[t.label];
  EXPECT_EQ(counts[config.templates[0].name], 50u);
  EXPECT_EQ(counts[config.templates[1].name], 25u);
  EXPECT_EQ(counts[config.templates[2].name], 25u);
}

TEST(Synthetic, ZeroTemplatesThrows) {
  SyntheticConfig config;
  EXPECT_THROW(generate_synthetic(config, 1), InvalidArgument);
}

}  // namespace
}  // namespace tweetgraph::corpus
