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

#include "tweetgraph/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "tweetgraph/error.h"
#include "tweetgraph/util.h"

namespace tweetgraph::corpus {
namespace {

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.below(items.size())];
}

std::string gibberish(Rng& rng) {
  static constexpr char kLetters[] = "abcdefghijklmnopqrstuvwxyz";
  const std::size_t length = 4 + rng.below(5);
  std::string word;
  for (std::size_t i = 0; i < length; ++i) word.push_back(kLetters[rng.below(26)]);
  return word;
}

// Largest-remainder split of `total` across `weights`; ties go to the
// earlier template.
std::vector<std::size_t> allocate(const std::vector<double>& weights,
                                  std::size_t total) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / sum;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < total; ++r, ++assigned) {
    ++counts[remainders[r % remainders.size()].second];
  }
  return counts;
}

std::string render(std::vector<std::string> words, Rng& rng) {
  shuffle(words, rng);
  if (!words.empty() && rng.bernoulli(0.3)) {
    std::string& first = words.front();
    if (first[0] >= 'a' && first[0] <= 'z') first[0] = static_cast<char>(first[0] - 'a' + 'A');
  }
  std::string body;
  if (rng.bernoulli(0.15)) body += "@user" + std::to_string(rng.below(1000)) + " ";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) body += ' ';
    body += words[i];
  }
  if (rng.bernoulli(0.2)) body += "!";
  if (rng.bernoulli(0.15)) body += " https://t.co/" + gibberish(rng);
  return body;
}

}  // namespace

std::vector<SyntheticTweet> generate_synthetic(const SyntheticConfig& config,
                                               std::uint64_t seed) {
  if (config.templates.empty()) {
    throw InvalidArgument("synthetic corpus needs at least one event template");
  }
  if (config.noise_rate < 0.0 || config.noise_rate > 1.0) {
    throw InvalidArgument("noise rate must be in [0, 1]");
  }
  std::vector<double> weights;
  for (const EventTemplate& t : config.templates) {
    if (t.keywords.empty()) {
      throw InvalidArgument("event template '" + t.name + "' has no keywords");
    }
    if (t.weight <= 0.0) {
      throw InvalidArgument("event template '" + t.name + "' needs positive weight");
    }
    weights.push_back(t.weight);
  }
  if (config.noise_rate > 0.0 && config.filler.empty()) {
    throw InvalidArgument("noise tweets need a filler vocabulary");
  }

  const auto noise_count = static_cast<std::size_t>(
      std::llround(config.noise_rate * static_cast<double>(config.tweet_count)));
  const std::vector<std::size_t> counts =
      allocate(weights, config.tweet_count - noise_count);

  // -1 marks noise.
  std::vector<long> sources(noise_count, -1);
  for (std::size_t t = 0; t < counts.size(); ++t) {
    sources.insert(sources.end(), counts[t], static_cast<long>(t));
  }
  Rng rng(seed);
  shuffle(sources, rng);

  std::vector<SyntheticTweet> tweets;
  tweets.reserve(sources.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::vector<std::string> words;
    std::string label;
    if (sources[i] < 0) {
      label = kNoiseLabel;
      const std::size_t filler = 5 + rng.below(5);
      for (std::size_t k = 0; k < filler; ++k) words.push_back(pick(config.filler, rng));
      const std::size_t junk = 1 + rng.below(2);
      for (std::size_t k = 0; k < junk; ++k) words.push_back(gibberish(rng));
    } else {
      const EventTemplate& event = config.templates[static_cast<std::size_t>(sources[i])];
      label = event.name;
      for (std::size_t k = 0; k < event.keywords.size(); ++k) {
        if (!rng.bernoulli(config.keyword_rate)) continue;
        const bool has_variants = k < event.variants.size() && !event.variants[k].empty();
        if (has_variants && rng.bernoulli(config.variant_rate)) {
          words.push_back(pick(event.variants[k], rng));
        } else {
          words.push_back(event.keywords[k]);
        }
      }
      if (words.empty()) words.push_back(event.keywords[rng.below(event.keywords.size())]);
      if (!event.context.empty()) {
        for (std::size_t k = 0; k < config.context_words; ++k) {
          words.push_back(pick(event.context, rng));
        }
      }
      if (!config.filler.empty()) {
        for (std::size_t k = 0; k < config.filler_words; ++k) {
          words.push_back(pick(config.filler, rng));
        }
      }
      if (config.rare_words > 0) {
        const std::size_t rare = 1 + rng.below(config.rare_words);
        for (std::size_t k = 0; k < rare; ++k) words.push_back(gibberish(rng));
      }
    }
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%05zu", i);
    tweets.push_back({RawTweet{id, render(std::move(words), rng), {}}, std::move(label)});
  }
  return tweets;
}

SyntheticConfig default_synthetic_config() {
  SyntheticConfig config;
  config.templates = {
      {"market_crash",
       {"stocks", "crashing", "dow", "slide", "bitcoin", "history"},
       {{"stockmarket", "#stocks"}, {"crashed", "crashinggg"}, {}, {"slides"},
        {"btc", "bitcoinn"}, {"historic"}},
       {"investors", "traders", "worst", "points", "selloff", "wallstreet",
        "futures", "losses"},
       1.0},
      {"cruise_quarantine",
       {"cruise", "ship", "quarantine", "passengers", "docked", "yokohama"},
       {{"cruiseship"}, {"ships"}, {"quarantined", "#quarantine"},
        {"passenger"}, {}, {}},
       {"crew", "onboard", "port", "evacuated", "japan", "princess",
        "diamond", "stranded"},
       1.0},
      {"cdc_warning",
       {"cdc", "warns", "disruption", "everyday", "life", "spread"},
       {{"#cdc"}, {"warning", "warnss"}, {"disruptions"}, {}, {}, {"spreading"}},
       {"officials", "americans", "prepare", "schools", "community",
        "health", "agency", "messonnier"},
       1.0},
  };
  config.filler = {
      "today",  "people", "news",   "think",  "really", "know",   "going",
      "world",  "time",   "new",    "right",  "still",  "want",   "say",
      "look",   "good",   "week",   "live",   "update", "report", "first",
      "latest", "watch",  "read",   "story",  "video",  "thread", "morning",
      "tonight", "sure",  "maybe",  "never",  "always", "great",  "bad",
      "seems",  "feel",   "heard",  "coming", "everyone"};
  return config;
}

void write_synthetic(const std::vector<SyntheticTweet>& tweets,
                     std::ostream& out) {
  for (const SyntheticTweet& t : tweets) {
    out << nlohmann::json{{"id", t.tweet.id}, {"text", t.tweet.text}, {"label", t.label}}
               .dump()
        << '\n';
  }
}

}  // namespace tweetgraph::corpus
