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

#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tweetgraph/embeddings.h"
#include "tweetgraph/error.h"
#include "tweetgraph/reduction.h"
#include "tweetgraph/synthetic.h"
#include "tweetgraph/util.h"

namespace tweetgraph::reduction {
namespace {

using embeddings::EmbeddingTable;

NodeId id_of(const GraphOfWords& g, const std::string& token) {
  const auto id = g.find(token);
  EXPECT_TRUE(id.has_value()) << token;
  return *id;
}

EmbeddingTable table_of(const std::map<std::string, std::vector<float>>& vectors) {
  std::vector<std::string> words;
  std::vector<float> data;
  std::size_t dim = 0;
  for (const auto& [w, v] : vectors) {
    words.push_back(w);
    data.insert(data.end(), v.begin(), v.end());
    dim = v.size();
  }
  return EmbeddingTable(dim, words, data);
}

double reference_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return ab / std::sqrt(aa * bb);
}

// Random simple graph with `n` singleton nodes.
GraphOfWords random_graph(Rng& rng, std::size_t n, double p) {
  GraphOfWords g;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string t = "n" + std::to_string(i);
    g.add_node(t, {t}, {static_cast<gow::TweetIndex>(i)});
  }
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (rng.bernoulli(p)) g.add_co_weight(a, b, 0.05 + rng.uniform());
    }
  }
  return g;
}

TEST(NodeDegree, Examples) {
  const GraphOfWords g = GraphOfWords::build(testing::figure_corpus());
  EXPECT_EQ(node_degree(g, id_of(g, "test")), 2.0);
  GraphOfWords h;
  h.add_node("a", {"a"}, {0});
  h.add_node("b", {"b"}, {0});
  h.add_node("c", {"c"}, {1});
  h.add_co_weight(0, 1, 0.75);
  EXPECT_EQ(node_degree(h, 2), 0.0);
  EXPECT_EQ(node_degree(h, 0), 0.75);
  EXPECT_THROW(node_degree(h, 9), NotFoundError);
}

TEST(MergeNodes, CoronaIntoVirus) {
  GraphOfWords g = GraphOfWords::build(testing::figure_corpus());
  MergeLog log;
  const NodeId corona = id_of(g, "corona");
  const NodeId virus = id_of(g, "virus");
  const MergeEvent& e = merge_nodes(g, corona, virus, log, 2, 0.7);
  EXPECT_EQ(e.src, corona);
  EXPECT_EQ(e.dst, virus);
  EXPECT_EQ(e.src_token, "corona");
  EXPECT_EQ(e.dst_token, "virus");
  EXPECT_EQ(e.sequence, 0u);
  EXPECT_EQ(g.co_weight(id_of(g, "test"), virus), 1.5);
  EXPECT_FALSE(g.is_live(corona));
  EXPECT_EQ(g.node(virus).members, (std::set<std::string>{"corona", "virus"}));
  EXPECT_EQ(g.live_count(), 3u);
}

TEST(MergeNodes, ErrorsOnSelfAndUnknown) {
  GraphOfWords g = GraphOfWords::build(testing::figure_corpus());
  MergeLog log;
  EXPECT_THROW(merge_nodes(g, 0, 0, log), InvalidArgument);
  EXPECT_THROW(merge_nodes(g, 0, 42, log), NotFoundError);
  EXPECT_EQ(log.size(), 0u);
}

TEST(MergeNodes, ConnectingWeightVanishes) {
  GraphOfWords g;
  g.add_node("a", {"a"}, {0});
  g.add_node("b", {"b"}, {0});
  g.add_co_weight(0, 1, 2.5);
  MergeLog log;
  merge_nodes(g, 0, 1, log);
  EXPECT_EQ(g.total_weight(), 0.0);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(MergeNodes, SubsetNeighborhoodDegreeGrowth) {
  Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    GraphOfWords g = random_graph(rng, 12, 0.6);
    for (NodeId src = 0; src < 12; ++src) {
      for (NodeId dst = 0; dst < 12; ++dst) {
        if (src == dst) continue;
        bool subset = true;
        for (const auto& [v, w] : g.neighbors(src)) {
          if (v != dst && !g.neighbors(dst).contains(v)) subset = false;
        }
        if (!subset) continue;
        const double expected = node_degree(g, dst) + node_degree(g, src) -
                                2 * g.co_weight(src, dst);
        MergeLog log;
        merge_nodes(g, src, dst, log);
        EXPECT_NEAR(node_degree(g, dst), expected, 1e-9);
        ++checked;
        goto next_trial;
      }
    }
  next_trial:;
  }
  EXPECT_GT(checked, 20);
}

TEST(MergeNodes, WeightConservationProperty) {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    GraphOfWords g = random_graph(rng, 5 + rng.below(60), rng.uniform(0.05, 0.5));
    MergeLog log;
    while (g.live_count() > 1) {
      const auto live = g.live_nodes();
      const NodeId src = live[rng.below(live.size())];
      NodeId dst = src;
      while (dst == src) dst = live[rng.below(live.size())];
      const double before = g.total_weight();
      const double discarded = g.co_weight(src, dst);
      const std::size_t count = g.live_count();
      merge_nodes(g, src, dst, log);
      EXPECT_NEAR(before - g.total_weight(), discarded, 1e-9);
      EXPECT_EQ(g.live_count(), count - 1);
    }
    for (std::size_t i = 0; i < log.size(); ++i) EXPECT_EQ(log.events()[i].sequence, i);
  }
}

// "florida" appears in five tweets; the misspelling only once.
TEST(Phase1, RareMisspellingJoinsIntendedWord) {
  std::vector<std::vector<std::string>> lists(5, {"florida", "beach"});
  lists.push_back({"floridah", "beach"});
  GraphOfWords g = GraphOfWords::build(testing::make_corpus(lists));
  const EmbeddingTable table = table_of({{"florida", {1, 0.1f}},
                                         {"floridah", {1, 0.15f}},
                                         {"beach", {0.1f, 1}}});
  MergeLog log;
  const PhaseReport r = phase1_reduce(g, table, ReductionConfig{}, log);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log.events()[0].src_token, "floridah");
  EXPECT_EQ(log.events()[0].dst_token, "florida");
  EXPECT_EQ(log.events()[0].phase, 1);
  EXPECT_EQ(r.merges, 1u);
  EXPECT_EQ(r.nodes_before, 3u);
  EXPECT_EQ(r.nodes_after, 2u);
  EXPECT_EQ(g.find("floridah"), g.find("florida"));
  EXPECT_EQ(g.node(*g.find("florida")).tweet_df(), 6u);
}

TEST(Phase1, NoRareNodesLeavesGraphUnchanged) {
  std::vector<std::vector<std::string>> lists(5, {"a", "b"});
  GraphOfWords g = GraphOfWords::build(testing::make_corpus(lists));
  const EmbeddingTable table = table_of({{"a", {1, 0}}, {"b", {0.9f, 0.1f}}});
  MergeLog log;
  const PhaseReport r = phase1_reduce(g, table, ReductionConfig{}, log);
  EXPECT_EQ(log.size(), 0u);
  EXPECT_EQ(r.nodes_after, 2u);
  EXPECT_TRUE(r.unresolved.empty());
}

// aa and ab merge first; zz's whole pool is {aa, ab}, which now resolve to
// their parents.
TEST(Phase1, PoolOfMergedTokensResolvesToParents) {
  std::vector<std::vector<std::string>> lists(5, {"alpha", "beta"});
  lists[0].push_back("aa");
  lists[1].push_back("ab");
  for (int i = 2; i < 5; ++i) lists[i].push_back("zz");
  GraphOfWords g = GraphOfWords::build(testing::make_corpus(lists));
  const EmbeddingTable table = table_of({{"alpha", {1, 0, 0}},
                                         {"beta", {0, 1, 0}},
                                         {"aa", {1, 0, 0.3f}},
                                         {"ab", {0, 1, 0.3f}},
                                         {"zz", {0.5f, 0.5f, 1}}});
  ReductionConfig config;
  config.phase1_candidate_pool = 2;
  MergeLog log;
  phase1_reduce(g, table, config, log);
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log.events()[0].src_token, "aa");
  EXPECT_EQ(log.events()[0].dst_token, "alpha");
  EXPECT_EQ(log.events()[1].src_token, "ab");
  EXPECT_EQ(log.events()[1].dst_token, "beta");
  EXPECT_EQ(log.events()[2].src_token, "zz");
  EXPECT_EQ(log.events()[2].dst_token, "alpha");
  const double expected = reference_cosine({0.5, 0.5, 1}, {1, 0, 0.3});
  EXPECT_NEAR(log.events()[2].trigger_similarity, expected, 1e-6);
}

TEST(Phase1, UnresolvableNodesAreReported) {
  std::vector<std::vector<std::string>> lists(5, {"a", "b"});
  lists.push_back({"🙂", "a"});
  GraphOfWords g = GraphOfWords::build(testing::make_corpus(lists));
  const EmbeddingTable table = table_of({{"a", {1, 0}}, {"b", {0, 1}}});
  MergeLog log;
  const PhaseReport r = phase1_reduce(g, table, ReductionConfig{}, log);
  EXPECT_EQ(log.size(), 0u);
  ASSERT_EQ(r.unresolved.size(), 1u);
  EXPECT_EQ(g.node(r.unresolved[0]).leading_token, "🙂");
}

// Every in-graph word has a closer twin outside the graph except corona,
// whose nearest word is virus.
EmbeddingTable figure_vectors() {
  return table_of({{"virus", {1, 0, 0}},
                   {"viral", {1, -0.01f, 0}},
                   {"corona", {0.95f, 0.1f, 0}},
                   {"test", {0, 1, 0}},
                   {"testing", {0, 1, 0.01f}},
                   {"positive", {0, 0, 1}},
                   {"positives", {0, 0.01f, 1}}});
}

TEST(Phase2, CoronaCollapsesIntoVirus) {
  GraphOfWords g = GraphOfWords::build(testing::figure_corpus());
  ReductionConfig config;
  config.top_n = 1;
  MergeLog log;
  const PhaseReport r = phase2_reduce(g, figure_vectors(), config, log);
  ASSERT_EQ(log.size(), 1u);
  EXPECT_EQ(log.events()[0].src_token, "corona");
  EXPECT_EQ(log.events()[0].dst_token, "virus");
  EXPECT_EQ(log.events()[0].phase, 2);
  EXPECT_NEAR(log.events()[0].trigger_similarity,
              reference_cosine({0.95, 0.1, 0}, {1, 0, 0}), 1e-6);
  EXPECT_EQ(r.nodes_after, 3u);
}

TEST(Phase2, DissimilarNeighborsDoNotMerge) {
  GraphOfWords g = GraphOfWords::build(testing::make_corpus({{"virus", "test", "positive"}}));
  ReductionConfig config;
  config.top_n = 1;
  MergeLog log;
  phase2_reduce(g, figure_vectors(), config, log);
  EXPECT_EQ(log.size(), 0u);
  EXPECT_EQ(g.live_count(), 3u);
}

TEST(Phase2, HighestScoringNeighborIsParent) {
  GraphOfWords g = GraphOfWords::build(testing::make_corpus({{"hub", "n", "p8", "p9"}}));
  const EmbeddingTable table = table_of({{"hub", {0, 0, 1}},
                                         {"hubs", {0, 0.001f, 1}},
                                         {"n", {1, 0, 0}},
                                         {"p9", {0.9f, 0.43588989f, 0}},
                                         {"p8", {0.8f, -0.6f, 0}}});
  ReductionConfig config;
  config.top_n = 2;
  MergeLog log;
  phase2_reduce(g, table, config, log);
  ASSERT_GE(log.size(), 1u);
  EXPECT_EQ(log.events()[0].src_token, "n");
  EXPECT_EQ(log.events()[0].dst_token, "p9");
  EXPECT_NEAR(log.events()[0].trigger_similarity, 0.9, 1e-6);
}

corpus::Corpus synthetic_corpus(std::uint64_t seed) {
  std::vector<corpus::RawTweet> raw;
  for (const auto& t : corpus::generate_synthetic(corpus::default_synthetic_config(), seed)) {
    raw.push_back(t.tweet);
  }
  return corpus::preprocess_corpus(raw, corpus::PreprocessConfig::with_default_stopwords());
}

// Random vectors for most of the vocabulary; about a tenth have none.
EmbeddingTable random_table(const corpus::Corpus& c, std::uint64_t seed) {
  Rng rng(seed);
  std::map<std::string, std::vector<float>> vectors;
  for (const auto& [token, df] : c.vocabulary()) {
    if (rng.bernoulli(0.1)) continue;
    std::vector<float> v(6);
    for (auto& x : v) x = static_cast<float>(rng.uniform(-1, 1));
    vectors[token] = v;
  }
  return table_of(vectors);
}

TEST(Reduction, InvariantsOnSyntheticCorpora) {
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const corpus::Corpus c = synthetic_corpus(seed);
    const EmbeddingTable table = random_table(c, seed);
    GraphOfWords g = GraphOfWords::build(c);
    std::map<NodeId, std::string> leading;
    for (NodeId id : g.live_nodes()) leading[id] = g.node(id).leading_token;
    const std::size_t initial = g.live_count();

    MergeLog log;
    const PhaseReport p1 = phase1_reduce(g, table, ReductionConfig{}, log);
    const std::set<NodeId> unresolved(p1.unresolved.begin(), p1.unresolved.end());
    for (NodeId id : g.live_nodes()) {
      if (g.node(id).tweet_df() < ReductionConfig{}.min_tweet_df) {
        EXPECT_TRUE(unresolved.contains(id)) << g.node(id).leading_token;
      }
    }
    phase2_reduce(g, table, ReductionConfig{}, log);

    EXPECT_EQ(g.live_count(), initial - log.size());
    std::map<std::string, int> owners;
    for (NodeId id : g.live_nodes()) {
      EXPECT_EQ(g.node(id).leading_token, leading[id]);
      EXPECT_TRUE(g.node(id).members.contains(g.node(id).leading_token));
      for (const auto& m : g.node(id).members) {
        ++owners[m];
        EXPECT_EQ(g.find(m), id);
      }
    }
    EXPECT_EQ(owners.size(), c.vocabulary().size());
    for (const auto& [token, count] : owners) EXPECT_EQ(count, 1) << token;
    EXPECT_EQ(g.token_index().size(), c.vocabulary().size());
    for (std::size_t i = 0; i < log.size(); ++i) {
      EXPECT_EQ(log.events()[i].sequence, i);
      EXPECT_NE(log.events()[i].src, log.events()[i].dst);
    }
  }
}

TEST(Reduction, DeterministicMergeSequence) {
  const corpus::Corpus c = synthetic_corpus(5);
  const EmbeddingTable table = random_table(c, 5);
  std::string first;
  for (int run = 0; run < 2; ++run) {
    GraphOfWords g = GraphOfWords::build(c);
    MergeLog log;
    phase1_reduce(g, table, ReductionConfig{}, log);
    phase2_reduce(g, table, ReductionConfig{}, log);
    std::ostringstream out;
    write_merge_log(log, out);
    if (run == 0) {
      first = out.str();
      EXPECT_FALSE(first.empty());
    } else {
      EXPECT_EQ(out.str(), first);
    }
  }
}

TEST(MergeLog, JsonlRoundTrip) {
  MergeLog log;
  log.append(3, 1, 1, 0.123456789123, "a", "b");
  log.append(4, 1, 2, 0.5, "c", "b");
  std::stringstream buffer;
  write_merge_log(log, buffer);
  const auto events = read_merge_log(buffer);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].src, 3u);
  EXPECT_EQ(events[0].sequence, 0u);
  EXPECT_EQ(events[1].sequence, 1u);
  EXPECT_EQ(events[1].phase, 2);
  EXPECT_NEAR(events[0].trigger_similarity, 0.123456789, 1e-12);
  EXPECT_EQ(log.count(1), 1u);
  EXPECT_EQ(log.count(2), 1u);
}

TEST(MergeLog, BadLineReportsLineNumber) {
  std::istringstream in("{\"x\":1}\n");
  EXPECT_THROW(read_merge_log(in), ParseError);
}

TEST(ReductionConfig, RejectsZero) {
  ReductionConfig c;
  c.top_n = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

}  // namespace
}  // namespace tweetgraph::reduction
